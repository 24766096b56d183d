"""Exact additive combinatorics over F_2^n.

Sets are ``F2Set`` values (a dimension plus sorted integer bit patterns, the
first coordinate being the most significant bit). Exact quantities come back
as ``fractions.Fraction``; reports come back as plain dicts in which every
``{"num", "den", "decimal"}`` rational has been replaced by a Fraction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from . import _core
from ._core import (  # noqa: F401
    CapExceeded,
    DimensionMismatch,
    EmptyInput,
    Error,
    HypothesisError,
    OutOfRange,
    ParseError,
)

__version__ = _core.__version__

RationalLike = Union[int, str, Fraction]


@dataclass(frozen=True)
class F2Set:
    dim: int
    elements: tuple

    def __init__(self, dim: int, elements: Iterable[int] = ()):
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "elements", tuple(sorted(set(int(x) for x in elements))))

    @classmethod
    def from_binary(cls, words: Sequence[str]) -> "F2Set":
        if not words:
            raise ValueError("from_binary needs at least one word to fix the dimension")
        dim = len(words[0])
        return cls(dim, (int(w, 2) for w in words))

    @classmethod
    def from_text(cls, text: str) -> "F2Set":
        dim, elems = _core.parse_set(text)
        return cls(dim, elems)

    def to_binary(self) -> list:
        return [format(x, "0{}b".format(self.dim)) for x in self.elements]

    def to_text(self) -> str:
        return _core.format_set(self.dim, list(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements


def _rational_text(value: RationalLike) -> str:
    return str(value)


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def _decode(node):
    if isinstance(node, dict):
        if set(node) == {"num", "den", "decimal"}:
            return Fraction(int(node["num"]), int(node["den"]))
        return {k: _decode(v) for k, v in node.items()}
    if isinstance(node, list):
        return [_decode(v) for v in node]
    return node


def _report(text: str) -> dict:
    return _decode(json.loads(text))


def sumset(a: F2Set, b: Optional[F2Set] = None) -> F2Set:
    b = a if b is None else b
    return F2Set(a.dim, _core.sumset(a.dim, list(a), list(b)))


def symmetry_set(a: F2Set, s: int) -> F2Set:
    return F2Set(a.dim, _core.symmetry_set(a.dim, list(a), int(s)))


def doubling(a: F2Set) -> Fraction:
    return _fraction(_core.doubling(a.dim, list(a)))


def span_size(a: F2Set) -> int:
    return 1 << _core.span_rank(a.dim, list(a))


def profile(a: F2Set, method: str = "naive") -> dict:
    return dict(_core.profile(a.dim, list(a), method))


def expectation_z(a: F2Set, method: str = "closed") -> Fraction:
    return _fraction(_core.expectation_z(a.dim, list(a), method))


def expectation_y2(a: F2Set, method: str = "closed") -> Fraction:
    return _fraction(_core.expectation_y2(a.dim, list(a), method))


def moments(a: F2Set, L: Optional[RationalLike] = None) -> dict:
    return _report(_core.moments(a.dim, list(a), None if L is None else _rational_text(L)))


def large_fiber_probability(a: F2Set, L: RationalLike) -> Fraction:
    return _fraction(_core.large_fiber_probability(a.dim, list(a), _rational_text(L)))


def bijection_check(a: F2Set, a1: int, a2: int) -> dict:
    return _report(_core.bijection_check(a.dim, list(a), int(a1), int(a2)))


def freiman_ruzsa_check(a: F2Set) -> dict:
    return _report(_core.freiman_ruzsa_check(a.dim, list(a)))


def extract_unstructured(a: F2Set, L: RationalLike, force: bool = False,
                         energy_floor: Optional[RationalLike] = None, threads: int = 1) -> dict:
    floor = None if energy_floor is None else _rational_text(energy_floor)
    return _report(_core.unstructured(a.dim, list(a), _rational_text(L), force, floor, threads))


def extract_structured(a: F2Set, eps: RationalLike, L: RationalLike, a_star: Optional[int] = None,
                       force: bool = False, threads: int = 1) -> dict:
    return _report(_core.structured(a.dim, list(a), a_star, _rational_text(eps), _rational_text(L),
                                    force, threads))


def generate(family: str, n: int, *, t: int = 0, d: int = 0, density: RationalLike = 1, k: int = 0,
             m: int = 0, same_coset: bool = False, seed: Optional[int] = None) -> F2Set:
    dim, elems = _core.generate(family, n, t, d, _rational_text(density), k, m, same_coset, seed)
    return F2Set(dim, elems)


def analyze(a: F2Set, method: str = "naive") -> dict:
    return _report(_core.analyze(a.dim, list(a), method))


def verify(a: F2Set, checks: Sequence[str] = ("mass", "lemma6", "lemma7", "lemma8", "eq6", "fr"),
           L: RationalLike = 2, eps: Optional[RationalLike] = None) -> tuple:
    code, text = _core.verify(a.dim, list(a), list(checks), _rational_text(L),
                              None if eps is None else _rational_text(eps))
    return code, _report(text)


__all__ = [
    "F2Set",
    "analyze",
    "bijection_check",
    "doubling",
    "expectation_y2",
    "expectation_z",
    "extract_structured",
    "extract_unstructured",
    "freiman_ruzsa_check",
    "generate",
    "large_fiber_probability",
    "moments",
    "profile",
    "span_size",
    "sumset",
    "symmetry_set",
    "verify",
]
