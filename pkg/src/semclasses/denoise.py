"""Clean and extend a noisy hypernym database with labelled semantic classes."""
from __future__ import annotations

from typing import Iterable, NamedTuple, TextIO

from .classes import SemanticClass
from .sense_inventory import ParseError

ORIGINAL = "original"
CLASS_LABEL = "class_label"


class BinaryRelation(NamedTuple):
    hyponym: str
    hypernym: str
    source: str = CLASS_LABEL


class HypernymDb:
    """``hyponym -> {hypernym: frequency}`` in input order."""

    def __init__(self, relations: dict[str, dict[str, int]] | None = None, parse_errors=()):
        self.relations = relations if relations is not None else {}
        self.parse_errors = tuple(parse_errors)

    def __contains__(self, pair) -> bool:
        hypo, hyper = pair
        return hyper in self.relations.get(hypo, {})

    def __len__(self) -> int:
        return sum(len(v) for v in self.relations.values())

    def hypernyms(self, word: str) -> dict[str, int]:
        return self.relations.get(word, {})


def parse_hypernym_db(lines: Iterable[str], strict: bool = True, source: str | None = None) -> HypernymDb:
    """Read ``hyponym<TAB>hypernym<TAB>frequency`` lines; repeated pairs are summed."""
    rel: dict[str, dict[str, int]] = {}
    errors = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        try:
            hypo, hyper, freq_text = line.split("\t")
            freq = int(freq_text)
            if freq < 1:
                raise ValueError(f"frequency must be >= 1, got {freq}")
            if not hypo or not hyper:
                raise ValueError("empty term")
        except ValueError as exc:
            err = ParseError(str(exc), lineno, source)
            if strict:
                raise err from None
            errors.append(err)
            continue
        row = rel.setdefault(hypo, {})
        row[hyper] = row.get(hyper, 0) + freq
    return HypernymDb(rel, errors)


def read_hypernym_db(path, strict: bool = True) -> HypernymDb:
    with open(path, encoding="utf-8") as fp:
        return parse_hypernym_db(fp, strict=strict, source=str(path))


def baseline_top_k(db: HypernymDb, word: str, k: int = 5) -> list[str]:
    """The ``k`` most frequent hypernyms of ``word`` (ties alphabetical)."""
    ranked = sorted(db.hypernyms(word).items(), key=lambda kv: (-kv[1], kv[0]))
    return [h for h, _ in ranked[:k]]


def class_relations(classes: Iterable[SemanticClass]) -> list[BinaryRelation]:
    """Member x label lemma pairs of every class, without self pairs or repeats."""
    seen: set[tuple[str, str]] = set()
    out = []
    for c in classes:
        labels = c.label_lemmas
        for hypo in c.member_lemmas:
            for hyper in labels:
                if hypo == hyper or (hypo, hyper) in seen:
                    continue
                seen.add((hypo, hyper))
                out.append(BinaryRelation(hypo, hyper, CLASS_LABEL))
    return out


def enhance(db: HypernymDb, classes: Iterable[SemanticClass]) -> list[BinaryRelation]:
    """Replace the hypernyms of every clustered word by its class labels.

    Label relations already present in ``db`` keep ``source=original``;
    new ones are marked ``class_label``. Database words outside all classes
    pass through untouched. Output is sorted by (hyponym, hypernym).
    """
    classes = list(classes)
    clustered = {lemma for c in classes for lemma in c.member_lemmas}
    out = [
        BinaryRelation(r.hyponym, r.hypernym, ORIGINAL if (r.hyponym, r.hypernym) in db else CLASS_LABEL)
        for r in class_relations(classes)
    ]
    for hypo, hypers in db.relations.items():
        if hypo in clustered:
            continue
        out.extend(BinaryRelation(hypo, h, ORIGINAL) for h in hypers if h != hypo)
    out.sort()
    return out


def write_relations(fp: TextIO, relations: Iterable[BinaryRelation]) -> None:
    for r in relations:
        fp.write(f"{r.hyponym}\t{r.hypernym}\t{r.source}\n")
