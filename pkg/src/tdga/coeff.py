"""Exact arithmetic in the commutative coefficient ring.

The ring is Z[l1^{+-1}, m1^{+-1}, ..., lr^{+-1}, mr^{+-1}][U, V], where
``l{j}`` / ``m{j}`` are the longitude / meridian units of the j-th link
component.  Three U,V modes exist:

* ``POLYNOMIAL`` -- U, V present with non-negative exponents (the filtered ring),
* ``LAURENT``    -- U, V invertible (the infinity ring),
* ``ABSENT``     -- no U, V (after specialization).

During the braid-action computation the coefficients instead live in
Z[t1^{+-1}, ..., tn^{+-1}] (auxiliary per-strand meridian variables, counted by
``n_tilde``); those are eliminated by a substitution before any DGA is built.

A polynomial is a canonical map from monomials to nonzero integer
coefficients.  Externally a monomial is an exponent tuple with layout
``(l1..lr, m1..mr, t1..tn_tilde [, U, V])``; internally the tuple is packed
into a single integer (one 16-bit offset-biased field per variable) so that
multiplying monomials is a single integer addition.  ``RingDescriptor.pack``
and ``unpack`` convert between the two forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import RingMismatchError, SubstitutionError

POLYNOMIAL = "polynomial"
LAURENT = "laurent"
ABSENT = "absent"

_UV_MODES = (POLYNOMIAL, LAURENT, ABSENT)

_FIELD = 16
_OFFSET = 1 << 15
_MASK = (1 << _FIELD) - 1


@dataclass(frozen=True, eq=False)
class RingDescriptor:
    """Shape of the coefficient ring: component count, U/V mode, tilde count."""

    r: int
    uv_mode: str = POLYNOMIAL
    n_tilde: int = 0

    def __post_init__(self):
        if self.r < 0 or self.n_tilde < 0:
            raise ValueError("negative variable counts")
        if self.uv_mode not in _UV_MODES:
            raise ValueError(f"unknown uv_mode {self.uv_mode!r}")
        names = [f"l{j}" for j in range(1, self.r + 1)]
        names += [f"m{j}" for j in range(1, self.r + 1)]
        names += [f"t{i}" for i in range(1, self.n_tilde + 1)]
        if self.uv_mode != ABSENT:
            names += ["U", "V"]
        object.__setattr__(self, "var_names", tuple(names))
        object.__setattr__(self, "nvars", len(names))
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})
        object.__setattr__(self, "uv_pos",
                           2 * self.r + self.n_tilde if self.uv_mode != ABSENT else None)
        shifts = tuple(_FIELD * i for i in range(len(names)))
        zero_key = sum(_OFFSET << s for s in shifts)
        object.__setattr__(self, "_shifts", shifts)
        object.__setattr__(self, "zero_key", zero_key)

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, RingDescriptor) and self.r == other.r
                and self.uv_mode == other.uv_mode and self.n_tilde == other.n_tilde)

    def __hash__(self):
        return hash((self.r, self.uv_mode, self.n_tilde))

    @property
    def has_uv(self) -> bool:
        return self.uv_mode != ABSENT

    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no variable {name!r} in {self}") from None

    def laurent_ok(self, name: str) -> bool:
        """May ``name`` carry negative exponents in this ring?"""
        if name in ("U", "V"):
            return self.uv_mode == LAURENT
        return True

    def pack(self, exps) -> int:
        key = self.zero_key
        for s, e in zip(self._shifts, exps):
            key += e << s
        return key

    def unpack(self, key: int) -> tuple:
        return tuple(((key >> s) & _MASK) - _OFFSET for s in self._shifts)

    def exp_at(self, key: int, i: int) -> int:
        return ((key >> self._shifts[i]) & _MASK) - _OFFSET


class CoeffPoly:
    """Canonical-form Laurent/ordinary polynomial over Z.

    ``terms`` maps packed monomial keys to nonzero ints.  Instances are
    treated as immutable; all operations return new values.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingDescriptor, terms: Mapping[tuple, int]):
        clean = {}
        iu = ring.uv_pos
        for e, c in terms.items():
            if c == 0:
                continue
            if ring.uv_mode == POLYNOMIAL and (e[iu] < 0 or e[iu + 1] < 0):
                raise ValueError("negative U/V exponent in polynomial mode")
            clean[ring.pack(e)] = c
        self.ring = ring
        self.terms = clean

    @classmethod
    def _raw(cls, ring: RingDescriptor, terms: dict) -> "CoeffPoly":
        """Internal constructor: ``terms`` already packed, canonical, valid."""
        self = object.__new__(cls)
        self.ring = ring
        self.terms = terms
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "CoeffPoly":
        return cls._raw(ring, {})

    @classmethod
    def integer(cls, ring: RingDescriptor, c: int) -> "CoeffPoly":
        return cls._raw(ring, {ring.zero_key: c} if c else {})

    @classmethod
    def one(cls, ring: RingDescriptor) -> "CoeffPoly":
        return cls.integer(ring, 1)

    @classmethod
    def monomial(cls, ring: RingDescriptor, coeff: int,
                 exps: Mapping[str, int] | None = None) -> "CoeffPoly":
        e = [0] * ring.nvars
        for name, k in (exps or {}).items():
            e[ring.var_index(name)] = k
        return cls(ring, {tuple(e): coeff})

    @classmethod
    def var(cls, ring: RingDescriptor, name: str, power: int = 1) -> "CoeffPoly":
        return cls.monomial(ring, 1, {name: power})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {self.ring.zero_key: 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit_monomial(self) -> bool:
        """A single term with coefficient +-1 whose variables are all invertible."""
        if len(self.terms) != 1:
            return False
        (e, c), = self.terms.items()
        if c not in (1, -1):
            return False
        if self.ring.uv_mode == POLYNOMIAL:
            iu = self.ring.uv_pos
            if self.ring.exp_at(e, iu) != 0 or self.ring.exp_at(e, iu + 1) != 0:
                return False
        return True

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "CoeffPoly"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError(f"rings differ: {self.ring} vs {other.ring}")

    def __add__(self, other: "CoeffPoly") -> "CoeffPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return CoeffPoly._raw(self.ring, out)

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "CoeffPoly") -> "CoeffPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return CoeffPoly._raw(self.ring, {})
            return CoeffPoly._raw(self.ring,
                                  {e: c * other for e, c in self.terms.items()})
        self._check(other)
        zk = self.ring.zero_key
        out: dict[int, int] = {}
        get = out.get
        for e1, c1 in self.terms.items():
            base = e1 - zk
            for e2, c2 in other.terms.items():
                e = base + e2
                s = get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return CoeffPoly._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CoeffPoly":
        if k < 0:
            return self.inverse_monomial() ** (-k)
        zk = self.ring.zero_key
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return CoeffPoly._raw(self.ring, {zk + k * (e - zk): c ** k})
        result = CoeffPoly.one(self.ring)
        for _ in range(k):
            result = result * self
        return result

    def inverse_monomial(self) -> "CoeffPoly":
        if not self.is_unit_monomial():
            raise SubstitutionError(f"not an invertible monomial: {self}")
        (e, c), = self.terms.items()
        return CoeffPoly._raw(self.ring, {2 * self.ring.zero_key - e: c})

    def __eq__(self, other) -> bool:
        return (isinstance(other, CoeffPoly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    # -- queries -----------------------------------------------------------

    def min_uv_exponents(self) -> tuple[int, int]:
        """Componentwise minimum of the (U, V) exponents over all monomials."""
        if not self.ring.has_uv:
            raise ValueError("ring has no U, V variables")
        if self.is_zero():
            raise ValueError("min_uv_exponents of zero polynomial")
        ring = self.ring
        iu = ring.uv_pos
        return (min(ring.exp_at(e, iu) for e in self.terms),
                min(ring.exp_at(e, iu + 1) for e in self.terms))

    def variables_used(self) -> set[str]:
        names = self.ring.var_names
        used = set()
        for key in self.terms:
            for i, x in enumerate(self.ring.unpack(key)):
                if x != 0:
                    used.add(names[i])
        return used

    # -- substitution ------------------------------------------------------

    def substitute(self, target: RingDescriptor,
                   images: Mapping[str, "CoeffPoly | int"]) -> "CoeffPoly":
        """Ring homomorphism into ``target``.

        Variables named in ``images`` are replaced (ints mean constants);
        every other variable must exist in ``target`` under the same name.
        A variable occurring with a negative exponent needs an invertible
        monomial (or +-1 constant) image.
        """
        imgs: dict[str, CoeffPoly] = {}
        for name, v in images.items():
            imgs[name] = CoeffPoly.integer(target, v) if isinstance(v, int) else v
            if imgs[name].ring != target:
                raise RingMismatchError(f"image of {name} not in target ring")
        names = self.ring.var_names
        out = CoeffPoly.zero(target)
        for key, c in self.terms.items():
            term = CoeffPoly.integer(target, c)
            kept: dict[str, int] = {}
            for i, k in enumerate(self.ring.unpack(key)):
                if k == 0:
                    continue
                name = names[i]
                img = imgs.get(name)
                if img is None:
                    if k < 0 and not target.laurent_ok(name):
                        raise SubstitutionError(
                            f"negative exponent of {name} not allowed in target")
                    kept[name] = k
                elif k > 0:
                    term = term * img ** k
                else:
                    if img.is_zero() or not img.is_unit_monomial():
                        raise SubstitutionError(
                            f"image of {name} must be invertible "
                            f"(occurs with exponent {k})")
                    term = term * img ** k
            if kept:
                term = term * CoeffPoly.monomial(target, 1, kept)
            out = out + term
        return out

    def evaluate_mod(self, p: int, values: Mapping[str, int]) -> int:
        """Evaluate in Z/p; negative exponents use modular inverses."""
        names = self.ring.var_names
        total = 0
        for key, c in self.terms.items():
            v = c % p
            for i, k in enumerate(self.ring.unpack(key)):
                if k == 0:
                    continue
                v = v * pow(values[names[i]] % p, k, p) % p
            total = (total + v) % p
        return total

    # -- text form ---------------------------------------------------------

    def sorted_terms(self) -> Iterator[tuple[tuple, int]]:
        unpack = self.ring.unpack
        return iter(sorted((unpack(e), c) for e, c in self.terms.items()))

    def to_text(self) -> str:
        """Canonical textual form, e.g. ``-1*l1^-1*m1^2*U``; ``0`` when zero."""
        if self.is_zero():
            return "0"
        names = self.ring.var_names
        parts = []
        for e, c in self.sorted_terms():
            factors = [str(c)]
            for i, k in enumerate(e):
                if k == 0:
                    continue
                factors.append(names[i] if k == 1 else f"{names[i]}^{k}")
            parts.append("*".join(factors))
        return "+".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"CoeffPoly({self.to_text()!r})"


_FACTOR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")


def coeff_from_text(ring: RingDescriptor, text: str) -> CoeffPoly:
    """Parse the ``to_text`` grammar back into a polynomial."""
    text = text.strip()
    if text == "0":
        return CoeffPoly.zero(ring)
    # split on '+' that start a new term (a leading '-' belongs to the coefficient)
    out = CoeffPoly.zero(ring)
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ValueError(f"empty term in {text!r}")
        factors = term.split("*")
        try:
            c = int(factors[0])
            rest = factors[1:]
        except ValueError:
            c = 1
            rest = factors
        exps: dict[str, int] = {}
        for f in rest:
            mm = _FACTOR_RE.match(f.strip())
            if not mm:
                raise ValueError(f"bad factor {f!r} in {text!r}")
            name, k = mm.group(1), int(mm.group(2) or 1)
            exps[name] = exps.get(name, 0) + k
        out = out + CoeffPoly.monomial(ring, c, exps)
    return out
