"""Counting augmentations: graded unital DGA maps to (Z/p, 0).

An augmentation sends every positive-degree generator to 0, every coefficient
unit (l_j, m_j, and U, V in the infinity ring) to a chosen unit of Z/p, and
every degree-0 generator a_ij to some field element, subject to eps(d g) = 0
for all generators g.  Degree->=2 differentials impose no condition -- every
monomial of a degree-1 element contains exactly one degree-1 generator, so it
dies under eps -- but that structural fact is asserted, not assumed.  The
constraints therefore come exactly from the degree-1 generators, whose
differentials are polynomials in the a_ij.

The optimized counter introduces a-variables one at a time and keeps a numpy
array of the partial assignments that survive every constraint whose support
is already assigned (constraints are applied as early as possible, cheapest
first).  ``naive_count_augmentations`` is the independent slow oracle: full
odometer enumeration with fresh symbolic evaluation of every differential.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .action import lr_matrices
from .algebra import GenId
from .braid import BraidWord, link_components
from .coeff import ABSENT, LAURENT, POLYNOMIAL, RingDescriptor
from .dga import FilteredDGA, build_matrices
from .errors import DgaError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass
class AugmentationProblem:
    """A specialized DGA plus a target field and unit images for the ring."""

    dga: FilteredDGA
    p: int
    lam: tuple[int, ...]            # image of l_j, one per link component
    mu: tuple[int, ...]             # image of m_j, one per link component
    u: int | None = None            # image of U (infinity ring only)
    v: int | None = None            # image of V (infinity ring only)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise DgaError(f"modulus {self.p} is not prime")
        ring = self.dga.ring
        if len(self.lam) != ring.r or len(self.mu) != ring.r:
            raise DgaError(f"need exactly {ring.r} lambda and mu images")
        if ring.n_tilde:
            raise DgaError("ring still carries auxiliary strand variables")
        if ring.uv_mode == POLYNOMIAL:
            raise DgaError("specialize U,V before counting augmentations")
        if ring.uv_mode == LAURENT:
            if self.u is None or self.v is None:
                raise DgaError("infinity ring needs U and V images")
        elif self.u is not None or self.v is not None:
            raise DgaError("U,V images given but the ring has no U,V")
        for val in (*self.lam, *self.mu, self.u, self.v):
            if val is not None and val % self.p == 0:
                raise DgaError("unit images must be nonzero mod p")

    def ring_values(self) -> dict[str, int]:
        vals: dict[str, int] = {}
        for j in range(self.dga.ring.r):
            vals[f"l{j + 1}"] = self.lam[j] % self.p
            vals[f"m{j + 1}"] = self.mu[j] % self.p
        if self.u is not None:
            vals["U"] = self.u % self.p
            vals["V"] = self.v % self.p
        return vals


def _assert_degree_two_vacuous(dga: FilteredDGA) -> None:
    """Every monomial of a degree-1 element kills under any augmentation."""
    for g in dga.generators:
        if g.degree < 2:
            continue
        for word, _ in dga.d(g).terms.items():
            positive = sum(1 for x in word if x.degree > 0)
            if positive != 1 or any(x.degree not in (0, 1) for x in word):
                raise DgaError(
                    f"differential of {g.name} has a monomial without exactly "
                    "one degree-1 factor; degree-2 constraints are not vacuous")


def _constraints(prob: AugmentationProblem):
    """[(coeff mod p, var-index tuple)] per degree-1 generator, plus var list.

    Variables are the degree-0 generators in enumeration order; constraints are
    sorted by the largest variable index they touch so each fires as soon as
    its support is assigned.
    """
    dga, p = prob.dga, prob.p
    vals = prob.ring_values()
    avars = [g for g in dga.generators if g.degree == 0]
    index = {g: i for i, g in enumerate(avars)}
    cons = []
    for g in dga.generators:
        if g.degree != 1:
            continue
        terms = []
        for word, coeff in dga.d(g).terms.items():
            if any(x.degree != 0 for x in word):
                raise DgaError(f"degree-1 differential of {g.name} is not "
                               "a polynomial in degree-0 generators")
            c = coeff.evaluate_mod(p, vals)
            if c:
                terms.append((c, tuple(index[x] for x in word)))
        last = max((v for _, w in terms for v in w), default=-1)
        cons.append((last, len(terms), terms))
    cons.sort(key=lambda t: (t[0], t[1]))
    return avars, cons


def count_augmentations(prob: AugmentationProblem) -> int:
    """Number of augmentations, by progressive vectorized filtering."""
    dga, p = prob.dga, prob.p
    _assert_degree_two_vacuous(dga)
    avars, cons = _constraints(prob)

    used = sorted({v for _, _, terms in cons for _, w in terms for v in w})
    pos = {v: k for k, v in enumerate(used)}
    # rows = surviving partial assignments of the variables introduced so far
    rows = np.zeros((1, 0), dtype=np.int64)
    ci = 0
    for k, v in enumerate(used):
        block = np.repeat(rows, p, axis=0)
        col = np.tile(np.arange(p, dtype=np.int64), rows.shape[0])[:, None]
        rows = np.hstack([block, col])
        while ci < len(cons) and cons[ci][0] <= v:
            total = np.zeros(rows.shape[0], dtype=np.int64)
            for c, word in cons[ci][2]:
                prod = np.full(rows.shape[0], c, dtype=np.int64)
                for x in word:
                    prod = prod * rows[:, pos[x]] % p
                total = (total + prod) % p
            rows = rows[total == 0]
            ci += 1
        if rows.shape[0] == 0:
            break
    # constraints with empty support (constant differentials)
    while ci < len(cons):
        const = sum(c for c, _ in cons[ci][2]) % p
        if const:
            return 0
        ci += 1
    free = len(avars) - len(used)
    return rows.shape[0] * p**free


def _poly_terms_mod(poly, p: int, vals: Mapping[str, int], index) -> list:
    """NcPoly -> [(coefficient mod p, variable-index word)], dropping zeros."""
    out = []
    for word, coeff in poly.terms.items():
        if any(x.degree != 0 for x in word):
            raise DgaError("expected a polynomial in degree-0 generators")
        c = coeff.evaluate_mod(p, vals)
        if c:
            out.append((c, tuple(index[x] for x in word)))
    return out


def _eval_terms(terms: list, rows: np.ndarray, p: int) -> np.ndarray:
    """Evaluate a term list on every assignment row (columns = variables)."""
    total = np.zeros(rows.shape[0], dtype=np.int64)
    for c, word in terms:
        prod = np.full(rows.shape[0], c, dtype=np.int64)
        for x in word:
            prod = prod * rows[:, x] % p
        total = (total + prod) % p
    return total


def count_augmentations_streamed(braid: BraidWord, p: int,
                                 lam: tuple[int, ...], mu: tuple[int, ...],
                                 u: int, v: int) -> int:
    """Count augmentations of the (U,V)=(u,v) specialization straight from
    the braid, without ever materializing the b-differentials.

    For long braids phi_B(A) (hence every d(b_ij)) can be too large to hold in
    memory even though Phi^L and Phi^R stay small.  The c-constraints need
    only Phi^R (d C = A^V lam + A^U Phi^R); they are applied first by the same
    progressive filtering as ``count_augmentations``.  The b-constraints are
    then checked numerically on the survivors,

        eps(lam^{-1} A lam) == eps(Phi^L) eps(A) eps(Phi^R),

    as modular n x n matrix products per assignment, so the product
    Phi^L * A * Phi^R is never formed symbolically.  Degree->=2 generators
    impose no condition (their differentials read off matrix equations whose
    B/C factors have single-generator entries); that structural fact is
    asserted per-DGA on the route through ``count_augmentations``, which this
    function must agree with whenever both run.
    """
    if not _is_prime(p):
        raise DgaError(f"modulus {p} is not prime")
    comp = link_components(braid)
    if len(lam) != comp.r or len(mu) != comp.r:
        raise DgaError(f"need exactly {comp.r} lambda and mu images")
    for val in (*lam, *mu):
        if val % p == 0:
            raise DgaError("unit images must be nonzero mod p")
    ring = RingDescriptor(r=comp.r, uv_mode=POLYNOMIAL)
    vals: dict[str, int] = {"U": u % p, "V": v % p}
    for j in range(comp.r):
        vals[f"l{j + 1}"] = lam[j] % p
        vals[f"m{j + 1}"] = mu[j] % p

    n = braid.strands
    mats = build_matrices(braid, ring, comp)
    L, R = lr_matrices(braid, ring, comp)
    avars = [GenId("a", i, j)
             for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    index = {g: k for k, g in enumerate(avars)}

    # c-constraints, fired progressively as their support gets assigned
    dC = mats.A_V * mats.lam + mats.A_U * R
    cons = []
    for i in range(n):
        for j in range(n):
            terms = _poly_terms_mod(dC[i, j], p, vals, index)
            last = max((x for _, w in terms for x in w), default=-1)
            cons.append((last, len(terms), terms))
    cons.sort(key=lambda t: (t[0], t[1]))

    rows = np.zeros((1, 0), dtype=np.int64)
    ci = 0
    for k in range(len(avars)):
        rows = np.hstack([np.repeat(rows, p, axis=0),
                          np.tile(np.arange(p, dtype=np.int64),
                                  rows.shape[0])[:, None]])
        while ci < len(cons) and cons[ci][0] <= k:
            rows = rows[_eval_terms(cons[ci][2], rows, p) == 0]
            ci += 1
        if rows.shape[0] == 0:
            return 0
    while ci < len(cons):
        if sum(c for c, _ in cons[ci][2]) % p:
            return 0
        ci += 1

    # numeric b-check on the survivors
    lam_diag = [mats.lam[i, i].terms.get((), None) for i in range(n)]
    lam_val = [c.evaluate_mod(p, vals) if c is not None else 0
               for c in lam_diag]
    if any(x % p == 0 for x in lam_val):
        raise DgaError("lambda matrix is singular mod p")
    lam_inv_val = [pow(x, p - 2, p) for x in lam_val]

    def term_grid(mat):
        return [[_poly_terms_mod(mat[i, j], p, vals, index) for j in range(n)]
                for i in range(n)]

    def value_matrix(grid, rows):
        out = np.zeros((rows.shape[0], n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                out[:, i, j] = _eval_terms(grid[i][j], rows, p)
        return out

    A_grid, L_grid, R_grid = term_grid(mats.A), term_grid(L), term_grid(R)
    count = 0
    step = 1 << 14
    for start in range(0, rows.shape[0], step):
        chunk = rows[start:start + step]
        Av = value_matrix(A_grid, chunk)
        rhs = (value_matrix(L_grid, chunk) @ Av % p) @ value_matrix(R_grid, chunk) % p
        lhs = (np.asarray(lam_inv_val)[None, :, None] * Av
               * np.asarray(lam_val)[None, None, :]) % p
        count += int(np.all(rhs == lhs, axis=(1, 2)).sum())
    return count


def naive_count_augmentations(prob: AugmentationProblem) -> int:
    """Slow oracle: try every assignment, re-evaluating symbolically."""
    dga, p = prob.dga, prob.p
    _assert_degree_two_vacuous(dga)
    vals = prob.ring_values()
    avars = [g for g in dga.generators if g.degree == 0]
    ones = [g for g in dga.generators if g.degree == 1]
    count = 0
    for assignment in itertools.product(range(p), repeat=len(avars)):
        eps = dict(zip(avars, assignment))
        ok = True
        for g in ones:
            total = 0
            for word, coeff in dga.d(g).terms.items():
                v = coeff.evaluate_mod(p, vals)
                for x in word:
                    v = v * eps[x] % p
                total = (total + v) % p
            if total:
                ok = False
                break
        if ok:
            count += 1
    return count


def count_augmentations_all_units(dga: FilteredDGA, p: int,
                                  counter=count_augmentations) -> list[dict]:
    """Counts for every unit tuple (l_j, m_j [, U, V]); rows in odometer order."""
    if not _is_prime(p):
        raise DgaError(f"modulus {p} is not prime")
    units = list(range(1, p))
    r = dga.ring.r
    with_uv = dga.ring.uv_mode == LAURENT
    slots = 2 * r + (2 if with_uv else 0)
    table = []
    for tup in itertools.product(units, repeat=slots):
        lam, mu = tup[:r], tup[r:2 * r]
        u, v = (tup[2 * r], tup[2 * r + 1]) if with_uv else (None, None)
        prob = AugmentationProblem(dga, p, lam, mu, u, v)
        row = {"lambda": list(lam), "mu": list(mu)}
        if with_uv:
            row["U"], row["V"] = u, v
        row["count"] = counter(prob)
        table.append(row)
    return table
