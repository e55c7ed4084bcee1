"""Induced sense inventory: sense identifiers, TSV ingestion and lookups.

An inventory line looks like::

    mango#0<TAB>peach#1:0.8,grape#0:0.7<TAB>fruit#0:2.5,food#0:1.0

i.e. a sense id, its related senses and its (noisy) hypernyms, both lists
carrying weights.
"""
from __future__ import annotations

import re
import unicodedata
from typing import Iterable, Iterator, NamedTuple, TextIO

_SENSE_RE = re.compile(r"^(.+)#(\d+)$", re.DOTALL)


class ParseError(ValueError):
    """A malformed input line. ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None, source: str | None = None):
        self.lineno = lineno
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)


class SenseId(NamedTuple):
    lemma: str
    sense: int

    @classmethod
    def parse(cls, text: str) -> "SenseId":
        """Split on the rightmost ``#<digits>``; ``C##2`` is lemma ``C#``."""
        m = _SENSE_RE.match(text)
        if m is None:
            raise ValueError(f"not a sense id: {text!r}")
        lemma = unicodedata.normalize("NFC", m.group(1))
        if "\t" in lemma or "\n" in lemma:
            raise ValueError(f"lemma contains tab or newline: {text!r}")
        return cls(lemma, int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.lemma}#{self.sense}"


class Entry(NamedTuple):
    neighbors: dict  # SenseId -> weight, input order
    hypernyms: dict  # SenseId -> weight, input order


def format_weight(w: float) -> str:
    return repr(float(w))


class SenseInventory:
    """Immutable mapping ``SenseId -> Entry`` with a lemma index.

    Neighbour lists may mention senses that have no entry of their own;
    such senses simply have no neighbours or hypernyms.
    """

    def __init__(self, entries: dict[SenseId, Entry], parse_errors: Iterable[ParseError] = ()):
        self._entries = entries
        self._by_lemma: dict[str, set[SenseId]] = {}
        for s in entries:
            self._by_lemma.setdefault(s.lemma, set()).add(s)
        self.parse_errors = tuple(parse_errors)
        self._hypernym_df: dict[str, int] | None = None

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, s: object) -> bool:
        return s in self._entries

    def __iter__(self) -> Iterator[SenseId]:
        return iter(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SenseInventory):
            return NotImplemented
        if list(self._entries) != list(other._entries):
            return False
        return all(
            list(e.neighbors.items()) == list(other._entries[s].neighbors.items())
            and list(e.hypernyms.items()) == list(other._entries[s].hypernyms.items())
            for s, e in self._entries.items()
        )

    def entry(self, s: SenseId) -> Entry:
        try:
            return self._entries[s]
        except KeyError:
            raise KeyError(f"unknown sense {s}") from None

    def neighbors(self, s: SenseId) -> dict:
        """N(s) as an ordered ``{sense: weight}`` dict; empty for unknown senses."""
        e = self._entries.get(s)
        return e.neighbors if e is not None else {}

    def hypernyms(self, s: SenseId) -> dict:
        e = self._entries.get(s)
        return e.hypernyms if e is not None else {}

    def relatedness(self, a: SenseId, b: SenseId) -> float | None:
        """Weight of ``b`` in N(a) or ``a`` in N(b); the larger one if both exist."""
        w_ab = self.neighbors(a).get(b)
        w_ba = self.neighbors(b).get(a)
        if w_ab is None:
            return w_ba
        if w_ba is None:
            return w_ab
        return max(w_ab, w_ba)

    def lemma_senses(self, lemma: str) -> set[SenseId]:
        lemma = unicodedata.normalize("NFC", lemma)
        return set(self._by_lemma.get(lemma, ()))

    def hypernym_document_frequency(self) -> dict[str, int]:
        """Number of senses whose hypernym list mentions each hypernym lemma."""
        if self._hypernym_df is None:
            df: dict[str, int] = {}
            for e in self._entries.values():
                for lemma in {h.lemma for h in e.hypernyms}:
                    df[lemma] = df.get(lemma, 0) + 1
            self._hypernym_df = df
        return self._hypernym_df

    def to_lines(self) -> Iterator[str]:
        for s, e in self._entries.items():
            yield "\t".join(
                (str(s), _format_list(e.neighbors), _format_list(e.hypernyms))
            ) + "\n"

    def write(self, fp: TextIO) -> None:
        fp.writelines(self.to_lines())


def _format_list(d: dict) -> str:
    return ",".join(f"{s}:{format_weight(w)}" for s, w in d.items())


def _parse_list(field: str, cache: dict[str, SenseId]) -> dict:
    out: dict[SenseId, float] = {}
    if not field:
        return out
    for item in field.split(","):
        text, sep, weight = item.rpartition(":")
        if not sep:
            raise ValueError(f"missing weight in {item!r}")
        s = cache.get(text)
        if s is None:
            s = cache[text] = SenseId.parse(text)
        w = float(weight)
        if not (w >= 0.0 and w != float("inf")):
            raise ValueError(f"weight must be finite and non-negative: {item!r}")
        if s in out:
            raise ValueError(f"duplicate sense {s} in list")
        out[s] = w
    return out


def parse_inventory(lines: Iterable[str], strict: bool = True, source: str | None = None) -> SenseInventory:
    """Parse inventory TSV lines.

    In strict mode the first malformed line raises :class:`ParseError`;
    otherwise malformed lines are skipped and collected in
    ``inventory.parse_errors``. A duplicate sense id is always fatal.
    """
    entries: dict[SenseId, Entry] = {}
    errors: list[ParseError] = []
    cache: dict[str, SenseId] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        fields = line.split("\t")
        try:
            if len(fields) != 3:
                raise ValueError(f"expected 3 tab-separated fields, got {len(fields)}")
            s = cache.get(fields[0])
            if s is None:
                s = cache[fields[0]] = SenseId.parse(fields[0])
            entry = Entry(_parse_list(fields[1], cache), _parse_list(fields[2], cache))
        except ValueError as exc:
            err = ParseError(str(exc), lineno, source)
            if strict:
                raise err from None
            errors.append(err)
            continue
        if s in entries:
            raise ParseError(f"duplicate sense id {s}", lineno, source)
        entries[s] = entry
    return SenseInventory(entries, errors)


def read_inventory(path, strict: bool = True) -> SenseInventory:
    with open(path, encoding="utf-8", newline="\n") as fp:
        return parse_inventory(fp, strict=strict, source=str(path))
