"""Assembly of the filtered DGA of a braid closure, and operations on it.

The differential is defined on generators by four matrix equations
(one per generator family) built from the braid-action matrices, the
component data, and the U/V-weighted generator matrices; it extends to
products by the graded Leibniz rule d(xy) = (dx)y + (-1)^{|x|} x (dy).

Specializations fix (U, V); the infinity version makes U, V invertible and
rescales the longitude by (U/V)^{-(sl+1)/2}.  Tame moves and destabilization
implement the elementary isomorphisms used to compare DGAs by hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .action import PhiData, compute_phi_data
from .algebra import INHOMOGENEOUS, GenId, NcMatrix, NcPoly, _acc_into
from .braid import BraidWord, ComponentData, link_components, self_linking
from .coeff import ABSENT, LAURENT, POLYNOMIAL, CoeffPoly, RingDescriptor
from .errors import DgaError, InternalVerificationError

MINUS = "minus"
HAT = "hat"
DOUBLEHAT = "doublehat"
UNFILTERED = "unfiltered"
INFINITY = "infinity"
TRANSFORMED = "transformed"
SPECIALIZED = "specialized"


def generator_list(n: int) -> tuple[GenId, ...]:
    gens = []
    for fam in ("a", "b", "c", "e"):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if fam in ("a", "b") and i == j:
                    continue
                gens.append(GenId(fam, i, j))
    return tuple(gens)


@dataclass
class DgaMatrices:
    """The generator matrices of one braid, over the DGA coefficient ring."""

    ring: RingDescriptor
    A: NcMatrix
    A_U: NcMatrix
    A_V: NcMatrix
    B: NcMatrix
    B_U: NcMatrix
    B_V: NcMatrix
    C: NcMatrix
    E: NcMatrix
    lam: NcMatrix
    lam_inv: NcMatrix


@dataclass
class FilteredDGA:
    """Generators with degrees plus the differential on each generator.

    Freshly built DGAs keep their generator matrices and braid-action data
    (``mats``, ``action``) so the verifier can use the matrix form of the
    differential; specialization and tame moves drop them.
    """

    braid: BraidWord
    components: ComponentData
    ring: RingDescriptor
    generators: tuple[GenId, ...]
    differential: dict[GenId, NcPoly]
    provenance: str
    mats: "DgaMatrices | None" = field(default=None, repr=False, compare=False)
    action: PhiData | None = field(default=None, repr=False, compare=False)

    @property
    def strands(self) -> int:
        return self.braid.strands

    def d(self, g: GenId) -> NcPoly:
        return self.differential[g]

    def d_of(self, x: NcPoly) -> NcPoly:
        """Extend the differential by linearity and the graded Leibniz rule."""
        zk = self.ring.zero_key
        # accumulate raw coefficient dicts per word to avoid per-pair objects
        acc: dict[tuple[GenId, ...], dict[int, int]] = {}
        for w, c in x.terms.items():
            deg_left = 0
            for p, g in enumerate(w):
                dg = self.differential.get(g)
                if dg is not None and dg.terms:
                    sign = 1 if deg_left % 2 == 0 else -1
                    left, right = w[:p], w[p + 1:]
                    cterms = c.terms
                    for dw, dc in dg.terms.items():
                        word = left + dw + right
                        bucket = acc.get(word)
                        if bucket is None:
                            bucket = acc[word] = {}
                        bget = bucket.get
                        for e1, c1 in cterms.items():
                            base = e1 - zk
                            cs = c1 * sign
                            for e2, c2 in dc.terms.items():
                                e = base + e2
                                s = bget(e, 0) + cs * c2
                                if s:
                                    bucket[e] = s
                                elif e in bucket:
                                    del bucket[e]
                deg_left += g.degree
        out = {w: CoeffPoly._raw(self.ring, b) for w, b in acc.items() if b}
        return NcPoly._raw(self.ring, out)


def _uv(ring: RingDescriptor, name: str) -> CoeffPoly:
    if ring.has_uv:
        return CoeffPoly.var(ring, name)
    return CoeffPoly.one(ring)


def build_matrices(braid: BraidWord, ring: RingDescriptor | None = None,
                   components: ComponentData | None = None) -> DgaMatrices:
    comp = components if components is not None else link_components(braid)
    if ring is None:
        ring = RingDescriptor(r=comp.r, uv_mode=POLYNOMIAL)
    n = braid.strands
    one = CoeffPoly.one(ring)
    U = _uv(ring, "U")
    V = _uv(ring, "V")

    def mu(j: int) -> CoeffPoly:
        return CoeffPoly.var(ring, f"m{comp.alpha[j]}")

    def family(fam: str, weight_upper: CoeffPoly, weight_lower_extra: CoeffPoly,
               diag) -> NcMatrix:
        rows = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                if i == j:
                    row.append(diag(i))
                elif i < j:
                    row.append(NcPoly.gen(ring, GenId(fam, i, j), weight_upper))
                else:
                    row.append(NcPoly.gen(ring, GenId(fam, i, j),
                                          mu(j) * weight_lower_extra))
            rows.append(row)
        return NcMatrix(rows)

    def plain(fam: str) -> NcMatrix:
        return NcMatrix([[NcPoly.gen(ring, GenId(fam, i, j))
                          for j in range(1, n + 1)] for i in range(1, n + 1)])

    zero_diag = lambda i: NcPoly.zero(ring)
    mats = DgaMatrices(
        ring=ring,
        A=family("a", one, one, lambda i: NcPoly.scalar(one + mu(i))),
        A_U=family("a", U, one, lambda i: NcPoly.scalar(U + mu(i))),
        A_V=family("a", one, V, lambda i: NcPoly.scalar(one + mu(i) * V)),
        B=family("b", one, one, zero_diag),
        B_U=family("b", U, one, zero_diag),
        B_V=family("b", one, V, zero_diag),
        C=plain("c"),
        E=plain("e"),
        lam=_lambda_matrix(braid, comp, ring, invert=False),
        lam_inv=_lambda_matrix(braid, comp, ring, invert=True),
    )
    return mats


def _lambda_matrix(braid: BraidWord, comp: ComponentData,
                   ring: RingDescriptor, invert: bool) -> NcMatrix:
    diag = []
    for i in range(1, braid.strands + 1):
        if i in comp.leading:
            c = comp.alpha[i]
            w = comp.writhe_per_component[c]
            mono = CoeffPoly.monomial(ring, 1, {f"l{c}": 1, f"m{c}": w})
            diag.append(mono.inverse_monomial() if invert else mono)
        else:
            diag.append(CoeffPoly.one(ring))
    return NcMatrix.diagonal(diag)


def _read_differential(braid: BraidWord, comp: ComponentData, mats: DgaMatrices,
                       phi: PhiData, filtered: bool,
                       conjugated: bool = True) -> dict[GenId, NcPoly]:
    """Read the generator differentials off the four matrix equations.

    ``conjugated=True`` takes phi_B(A) for the second term of the b-family
    equation (equal to Phi^L * A * Phi^R but far cheaper to produce); the
    explicit product is kept as the independent route for cross-checks.
    """
    ring = mats.ring
    n = braid.strands
    AV = mats.A_V if filtered else mats.A
    AU = mats.A_U if filtered else mats.A
    BV = mats.B_V if filtered else mats.B
    BU = mats.B_U if filtered else mats.B

    conj = phi.phi_A if conjugated else phi.phi_L * mats.A * phi.phi_R
    dB = -(mats.lam_inv * mats.A * mats.lam) + conj
    dC = AV * mats.lam + AU * phi.phi_R
    dE = (BV * phi.phi_R_inv + BU * mats.lam_inv
          - phi.phi_L * mats.C * mats.lam_inv
          + mats.lam_inv * mats.C * phi.phi_R_inv)

    diff: dict[GenId, NcPoly] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                diff[GenId("a", i, j)] = NcPoly.zero(ring)
                # b-matrix entries carry a meridian weight below the diagonal
                entry = dB[i - 1, j - 1]
                if i > j:
                    w_inv = CoeffPoly.var(ring, f"m{comp.alpha[j]}").inverse_monomial()
                    entry = entry.scale(w_inv)
                diff[GenId("b", i, j)] = entry
            else:
                if not dB[i - 1, j - 1].is_zero():
                    raise InternalVerificationError(
                        "diagonal of the b-family equation is not zero")
            diff[GenId("c", i, j)] = dC[i - 1, j - 1]
            diff[GenId("e", i, j)] = dE[i - 1, j - 1]
    return diff


def build_filtered_dga(braid: BraidWord) -> FilteredDGA:
    """The doubly filtered DGA (U, V polynomial coefficients)."""
    comp = link_components(braid)
    ring = RingDescriptor(r=comp.r, uv_mode=POLYNOMIAL)
    mats = build_matrices(braid, ring, comp)
    phi = compute_phi_data(braid, ring, comp)
    diff = _read_differential(braid, comp, mats, phi, filtered=True)
    return FilteredDGA(braid, comp, ring, generator_list(braid.strands),
                       diff, MINUS, mats=mats, action=phi)


def build_unfiltered_dga(braid: BraidWord) -> FilteredDGA:
    """The unfiltered DGA from its own matrix equations (no U, V at all).

    Independent route used to cross-check the (U,V)=(1,1) specialization:
    the b-family equation expands the explicit product Phi^L * A * Phi^R.
    """
    comp = link_components(braid)
    ring = RingDescriptor(r=comp.r, uv_mode=ABSENT)
    mats = build_matrices(braid, ring, comp)
    phi = compute_phi_data(braid, ring, comp)
    diff = _read_differential(braid, comp, mats, phi, filtered=False,
                              conjugated=False)
    return FilteredDGA(braid, comp, ring, generator_list(braid.strands),
                       diff, UNFILTERED, mats=mats, action=phi)


# -- verification -----------------------------------------------------------

@dataclass
class VerifyEntry:
    generator: GenId | None
    check: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyReport:
    entries: list[VerifyEntry]

    @property
    def all_pass(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> list[VerifyEntry]:
        return [e for e in self.entries if not e.ok]


def _verify_grading(dga: FilteredDGA) -> list[VerifyEntry]:
    """Degree drop 1 and (in polynomial mode) U/V non-negativity."""
    entries = []
    for g in dga.generators:
        dg = dga.d(g)
        if dg.is_zero():
            entries.append(VerifyEntry(g, "degree", True, "d = 0"))
        else:
            deg = dg.degree()
            ok = deg is not INHOMOGENEOUS and deg == g.degree - 1
            entries.append(VerifyEntry(g, "degree", ok,
                                       f"deg(d {g.name}) = {deg}"))
        if dga.ring.uv_mode == POLYNOMIAL and not dg.is_zero():
            mins = [c.min_uv_exponents() for c in dg.terms.values()]
            ok = all(mu >= 0 and mv >= 0 for mu, mv in mins)
            entries.append(VerifyEntry(g, "uv_filtration", ok))
    return entries


# Above this many estimated partial products, an explicit inverse-product
# check is replaced by the construction-time letter-level verification (the
# explicit product of e.g. a 2*10^5-term matrix with its inverse passes
# through ~10^8 intermediate terms before cancelling -- unmaterializable).
_INVERSE_PRODUCT_BUDGET = 2_000_000


def _verify_square_expand(dga: FilteredDGA) -> list[VerifyEntry]:
    """d^2 = 0 by brute Leibniz expansion of d(d(g)) for every generator."""
    entries = []
    for g in dga.generators:
        dd = dga.d_of(dga.d(g))
        entries.append(VerifyEntry(g, "d_squared", dd.is_zero(),
                                   "" if dd.is_zero() else f"d^2 {g.name} = {dd}"))
    return entries


def _hadamard_u(m: NcMatrix, u: CoeffPoly) -> NcMatrix:
    """Scale strictly-upper entries by U (1 on and below the diagonal)."""
    n = m.n
    return NcMatrix([[m[i, j].scale(u) if i < j else m[i, j]
                      for j in range(n)] for i in range(n)])


def _hadamard_v(m: NcMatrix, v: CoeffPoly) -> NcMatrix:
    """Scale diagonal and below-diagonal entries by V (1 above)."""
    n = m.n
    return NcMatrix([[m[i, j].scale(v) if i >= j else m[i, j]
                      for j in range(n)] for i in range(n)])


def _eq(x: NcMatrix, y: NcMatrix) -> bool:
    n = x.n
    return all(x[i, j] == y[i, j] for i in range(n) for j in range(n))


def _verify_square_identities(dga: FilteredDGA) -> list[VerifyEntry]:
    """d^2 = 0 via exact matrix identities instead of brute expansion.

    For the a/b/c families this is structural: d(a) = 0 by definition, and
    every letter of d(b) and d(c) is an a-generator, so applying d again
    gives 0 term by term with no arithmetic.

    For the e family, write P for the matrix with P_ij = w_ij * d(b_ij)
    (w the below-diagonal meridian weight, P_ii = 0), M = P + lam^-1 A lam,
    H_U = U above the diagonal / 1 elsewhere, H_V = 1 above / V elsewhere.
    Because d kills every a-generator, applying d to the e-family equation
    gives, entrywise,

        d^2 E = (H_V . P) Ri + (H_U . P) lam^-1 - L (dC) lam^-1 + lam^-1 (dC) Ri

    with dC = A^V lam + A^U R, Ri = (Phi^R)^-1, L = Phi^L, . the entrywise
    product.  Using A^U = H_U . A + (U-1) I and A^V = H_V . A + (1-V) I
    (checked below), H . (lam^-1 X lam) = lam^-1 (H . X) lam for diagonal
    lam, and centrality of the coefficients, the expansion telescopes to
    zero provided the following hold:

        R Ri = Ri R = Id,      L Li = Li L = Id,
        H_V . M = L (H_V . A) R + (1-V) (L R - Id),
        H_U . M = L (H_U . A) R + (U-1) (L R - Id),

    plus the e/c differentials matching their matrix equations (so that the
    first display applies to the differential exactly as stored).  Given the
    inverse facts, the last two are equivalent to their one-sided forms

        (H_V . M) Ri = L (H_V . A) + (1-V)(L - Ri),
        Li (H_U . M) = (H_U . A) R + (U-1)(R - Li),

    and the telescoping can be run from either pair.  Which pair is cheap
    depends on the braid: words like K_1 make Li and Ri orders of magnitude
    larger than L, R and M, while their mirrors do the reverse (L, R huge;
    Li, Ri and M tiny).  The verifier estimates the number of partial
    products each pair costs from the per-entry term counts and checks the
    cheaper one; both routes are exact and the choice is recorded in the
    entry detail.

    The four inverse-product facts are verified by explicit multiplication
    whenever the estimated cost is affordable.  When a factor is so large
    that the explicit product cannot be materialized (hundreds of millions
    of intermediate terms before cancellation), the entry instead records
    that the fact holds by construction: each single-letter inverse pair is
    multiplied out and checked exactly when built (see _letter_matrices),
    and word-level inverses are assembled by the group law through the
    substitution homomorphism, so the word-level product is a chain of
    letter-level facts.  The detail string says which route was taken.

    Every remaining step is associativity or cancellation of a central
    scalar, valid in any ring, so the checks above constitute an exact
    proof of d^2 = 0 on the e family for this DGA.
    """
    mats, phi = dga.mats, dga.action
    ring = dga.ring
    n = dga.strands
    comp = dga.components
    one = CoeffPoly.one(ring)
    U = _uv(ring, "U")
    V = _uv(ring, "V")
    filtered = ring.has_uv
    entries: list[VerifyEntry] = []

    def mu(j: int) -> CoeffPoly:
        return CoeffPoly.var(ring, f"m{comp.alpha[j]}")

    # -- structural part: a, b, c ---------------------------------------
    a_ok = all(dga.d(g).is_zero() for g in dga.generators if g.family == "a")
    entries.append(VerifyEntry(None, "d_squared_a", a_ok,
                               "d vanishes on every a-generator"))
    for g in dga.generators:
        if g.family in ("b", "c"):
            letters_ok = all(h.family == "a"
                             for w in dga.d(g).terms for h in w)
            entries.append(VerifyEntry(
                g, "d_squared", letters_ok and a_ok,
                "structural: d(g) lies in the a-subalgebra"))

    # -- matrices entering the identities -------------------------------
    A, L, R = mats.A, phi.phi_L, phi.phi_R
    Li, Ri = phi.phi_L_inv, phi.phi_R_inv
    lam, lam_inv = mats.lam, mats.lam_inv
    ident = NcMatrix.identity(ring, n)

    def scaled(m: NcMatrix, c: CoeffPoly) -> NcMatrix:
        return m.map_entries(lambda e: e.scale(c))

    # P from the stored differential; M = P + lam^-1 A lam
    p_rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                row.append(NcPoly.zero(ring))
            elif i < j:
                row.append(dga.d(GenId("b", i, j)))
            else:
                row.append(dga.d(GenId("b", i, j)).scale(mu(j)))
        p_rows.append(row)
    M = NcMatrix(p_rows) + lam_inv * A * lam

    def sizes(m: NcMatrix) -> list[list[int]]:
        return [[len(m[i, j].terms) for j in range(n)] for i in range(n)]

    def est(sx: list[list[int]], sy: list[list[int]]) -> tuple[int, list[list[int]]]:
        """(partial-product count, entry-size bound) of a matrix product."""
        out = [[sum(sx[i][k] * sy[k][j] for k in range(n)) for j in range(n)]
               for i in range(n)]
        return sum(sum(row) for row in out), out

    sL, sR, sLi, sRi, sM, sA = (sizes(m) for m in (L, R, Li, Ri, M, A))
    cLA, sLA = est(sL, sA)
    cLAR, _ = est(sLA, sR)
    cLR, _ = est(sL, sR)
    two_sided_cost = cLA + cLAR + cLR
    cMRi, _ = est(sM, sRi)
    cLiM, _ = est(sLi, sM)
    cAR, _ = est(sA, sR)
    one_sided_cost = cMRi + cLiM + cLA + cAR

    premises = [
        ("lambda_inverse", _eq(lam * lam_inv, ident), ""),
        ("A_U_decomposition",
         _eq(mats.A_U, _hadamard_u(A, U) + scaled(ident, U - one)), ""),
        ("A_V_decomposition",
         _eq(mats.A_V, _hadamard_v(A, V) + scaled(ident, one - V)), ""),
    ]

    for name, x, xi, sx, sxi in (("R_inverse", R, Ri, sR, sRi),
                                 ("L_inverse", L, Li, sL, sLi)):
        cost = est(sx, sxi)[0] + est(sxi, sx)[0]
        if cost <= _INVERSE_PRODUCT_BUDGET:
            premises.append((name, _eq(x * xi, ident) and _eq(xi * x, ident),
                             "explicit product"))
        else:
            premises.append((name, True,
                             f"by construction (explicit product needs ~{cost} "
                             "partial products; letter-level inverses verified "
                             "when built, word level follows by the group law)"))

    if two_sided_cost <= one_sided_cost:
        LR = L * R
        premises += [
            ("V_identity",
             _eq(_hadamard_v(M, V),
                 (L * _hadamard_v(A, V)) * R + scaled(LR - ident, one - V)),
             "two-sided form"),
            ("U_identity",
             _eq(_hadamard_u(M, U),
                 (L * _hadamard_u(A, U)) * R + scaled(LR - ident, U - one)),
             "two-sided form"),
        ]
    else:
        premises += [
            ("V_identity",
             _eq(_hadamard_v(M, V) * Ri,
                 L * _hadamard_v(A, V) + scaled(L - Ri, one - V)),
             "one-sided form"),
            ("U_identity",
             _eq(Li * _hadamard_u(M, U),
                 _hadamard_u(A, U) * R + scaled(R - Li, U - one)),
             "one-sided form"),
        ]

    # the stored c/e differentials must equal their matrix equations
    AV = mats.A_V if filtered else A
    AU = mats.A_U if filtered else A
    BV = mats.B_V if filtered else mats.B
    BU = mats.B_U if filtered else mats.B
    dC = AV * lam + AU * R
    dE = BV * Ri + BU * lam_inv - L * mats.C * lam_inv + lam_inv * mats.C * Ri
    c_match = all((dga.d(GenId("c", i, j)) - dC[i - 1, j - 1]).is_zero()
                  for i in range(1, n + 1) for j in range(1, n + 1))
    e_match = all((dga.d(GenId("e", i, j)) - dE[i - 1, j - 1]).is_zero()
                  for i in range(1, n + 1) for j in range(1, n + 1))
    premises.append(("c_equation_match", c_match, ""))
    premises.append(("e_equation_match", e_match, ""))

    all_ok = a_ok and all(ok for _, ok, _ in premises)
    for name, ok, detail in premises:
        entries.append(VerifyEntry(None, name, ok, detail))
    for g in dga.generators:
        if g.family == "e":
            entries.append(VerifyEntry(g, "d_squared", all_ok,
                                       "matrix identities"))
    return entries


def verify_dga(dga: FilteredDGA, method: str = "auto") -> VerifyReport:
    """Check d^2 = 0, degree drop 1, and (in minus mode) U/V positivity.

    ``method``: "expand" forces the brute Leibniz expansion of d(d(g));
    "identities" uses the exact matrix-identity proof (needs the matrices a
    fresh build carries); "auto" picks identities when available.  Both are
    exact; the expansion doubles as the oracle for the identity route.
    """
    if method not in ("auto", "expand", "identities"):
        raise ValueError(f"unknown verification method {method!r}")
    if method == "auto":
        method = ("identities"
                  if dga.mats is not None and dga.action is not None
                  else "expand")
    entries = _verify_grading(dga)
    if method == "identities":
        if dga.mats is None or dga.action is None:
            raise DgaError("this DGA does not carry its matrix data")
        entries += _verify_square_identities(dga)
    else:
        entries += _verify_square_expand(dga)
    return VerifyReport(entries)


# -- specializations --------------------------------------------------------

_PROVENANCE_BY_UV = {(0, 1): HAT, (0, 0): DOUBLEHAT, (1, 1): UNFILTERED}


def specialize(dga: FilteredDGA, u: int, v: int) -> FilteredDGA:
    """Set (U, V) = (u, v); the result's ring has no U, V variables."""
    if not dga.ring.has_uv:
        raise DgaError("DGA has no U, V variables to specialize")
    target = RingDescriptor(r=dga.ring.r, uv_mode=ABSENT)
    images = {"U": u, "V": v}
    diff = {g: dg.map_coeffs(lambda c: c.substitute(target, images))
            for g, dg in dga.differential.items()}
    return FilteredDGA(dga.braid, dga.components, target, dga.generators,
                       diff, _PROVENANCE_BY_UV.get((u, v), SPECIALIZED))


def infinity_dga(braid: BraidWord) -> FilteredDGA:
    """Laurent U, V with the longitude rescaled by (U/V)^{-(sl+1)/2}.

    A topological (not just transverse) invariant; knots only.
    """
    comp = link_components(braid)
    if comp.r != 1:
        raise DgaError("infinity version is defined for knot closures only")
    sl = self_linking(braid)
    if (sl + 1) % 2 != 0:
        raise InternalVerificationError(
            f"sl + 1 = {sl + 1} must be even for a knot closure")
    s = (sl + 1) // 2
    base = build_filtered_dga(braid)
    target = RingDescriptor(r=1, uv_mode=LAURENT)
    lam_image = CoeffPoly.monomial(target, 1, {"l1": 1, "U": -s, "V": s})
    diff = {g: dg.map_coeffs(lambda c: c.substitute(target, {"l1": lam_image}))
            for g, dg in base.differential.items()}
    return FilteredDGA(braid, comp, target, base.generators, diff, INFINITY)


# -- tame moves and destabilization ----------------------------------------

def _split_elementary(dga: FilteredDGA, g: GenId,
                      image: NcPoly) -> tuple[CoeffPoly, NcPoly]:
    """Decompose image = u*g + v with u an invertible monomial, g not in v."""
    if g not in dga.generators:
        raise DgaError(f"{g.name} is not a generator of this DGA")
    if image.ring != dga.ring:
        raise DgaError("substitution image over a different ring")
    if image.is_zero() or image.degree() != g.degree:
        raise DgaError(f"image of {g.name} must be homogeneous of degree {g.degree}")
    u = image.terms.get((g,), CoeffPoly.zero(dga.ring))
    if u.is_zero() or not u.is_unit_monomial():
        raise DgaError(
            f"image of {g.name} must be unit*{g.name} + rest; got unit part {u}")
    v = image - NcPoly.gen(dga.ring, g, u)
    if g in v.generators_used():
        raise DgaError(f"the non-linear part of the image still contains {g.name}")
    return u, v


def apply_tame_substitution(dga: FilteredDGA, g: GenId,
                            image: NcPoly) -> FilteredDGA:
    """Push the differential through the elementary automorphism g -> image.

    The new differential is psi o d o psi^{-1}, where psi sends g to
    ``image`` and fixes every other generator, so the map is a DGA
    isomorphism from the input onto the result.
    """
    u, v = _split_elementary(dga, g, image)
    u_inv = u.inverse_monomial()
    psi = {g: image}
    psi_inv_g = (NcPoly.gen(dga.ring, g) - v).scale(u_inv)

    diff = {}
    for h in dga.generators:
        src = dga.d(h) if h != g else dga.d_of(psi_inv_g)
        diff[h] = src.substitute_gens(psi)
    return FilteredDGA(dga.braid, dga.components, dga.ring, dga.generators,
                       diff, TRANSFORMED)


def destabilize(dga: FilteredDGA, high: GenId, low: GenId) -> FilteredDGA:
    """Remove a canceling pair: d(high) = unit * low, low otherwise unused."""
    for g in (high, low):
        if g not in dga.generators:
            raise DgaError(f"{g.name} is not a generator of this DGA")
    if high.degree != low.degree + 1:
        raise DgaError(f"degree mismatch: |{high.name}| != |{low.name}| + 1")
    d_high = dga.d(high)
    u = d_high.terms.get((low,), CoeffPoly.zero(dga.ring))
    if u.is_zero() or not u.is_unit_monomial():
        raise DgaError(
            f"d({high.name}) must be unit*{low.name}; linear part is {u}")
    if not (d_high - NcPoly.gen(dga.ring, low, u)).is_zero():
        raise DgaError(f"d({high.name}) has terms beyond the unit multiple of {low.name}")
    for h in dga.generators:
        if h == high:
            continue
        if low in dga.d(h).generators_used():
            raise DgaError(f"{low.name} also occurs in d({h.name})")
        if high in dga.d(h).generators_used():
            raise DgaError(f"{high.name} occurs in d({h.name})")
    gens = tuple(g for g in dga.generators if g not in (high, low))
    diff = {g: dga.differential[g] for g in gens}
    return FilteredDGA(dga.braid, dga.components, dga.ring, gens, diff,
                       TRANSFORMED)
