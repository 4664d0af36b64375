"""The braid group action on the degree-0 subalgebra.

Each Artin generator sigma_k acts by an explicit substitution on the a-family
generators, with coefficients in Z[t1^{+-1},...,tn^{+-1}] (one invertible
auxiliary variable per strand; sigma_k also swaps t_k and t_{k+1}).  Words act
by composition, with the first letter of the word applied last (outermost).

Running the action on the algebra extended by an idle strand labeled 0
expresses the images of a_{i0} and a_{0j} as matrix combinations, which
yields the left/right matrices L and R with phi_B(A) = L * A * R.  Their
inverses come from the group law: R^{-1} = phi_B(R of the inverse word).
Single-letter inverses are verified by explicit products; word-level
inverse products are checked where the structural verifier needs them.

Closing the braid identifies t_i with the meridian of strand i's component
(``eliminate_tilde``); everything the DGA consumes is post-elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import GenId, GenSubstitution, NcMatrix, NcPoly
from .braid import BraidWord, ComponentData, inverse_braid, link_components
from .coeff import ABSENT, CoeffPoly, RingDescriptor
from .errors import InternalVerificationError


@lru_cache(maxsize=None)
def action_ring(n: int) -> RingDescriptor:
    """Coefficient ring used while composing the braid action on n strands."""
    return RingDescriptor(r=0, uv_mode=ABSENT, n_tilde=n)


def _a(ring, i, j, coeff=1):
    return NcPoly.gen(ring, GenId("a", i, j), coeff)


def phi_generator(k: int, sign: int, n: int, labels: tuple[int, ...] | None = None,
                  ring: RingDescriptor | None = None) -> GenSubstitution:
    """Substitution for sigma_k^{sign} acting on strands ``labels``.

    ``labels`` defaults to (1..n); the extended construction passes (0, 1..n).
    The sign=-1 table is the formal inverse of the sign=+1 one; tests enforce
    the round trip on every generator.
    """
    if labels is None:
        labels = tuple(range(1, n + 1))
    if ring is None:
        ring = action_ring(n)
    if not (k in labels and (k + 1) in labels):
        raise ValueError(f"generator index {k} out of range")
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")

    tk_over_tk1 = CoeffPoly.monomial(ring, 1, {f"t{k}": 1, f"t{k + 1}": -1})
    others = [i for i in labels if i not in (k, k + 1)]
    images: dict[GenId, NcPoly] = {}

    if sign == 1:
        images[GenId("a", k, k + 1)] = _a(ring, k + 1, k, -1)
        images[GenId("a", k + 1, k)] = _a(ring, k, k + 1).scale(-tk_over_tk1)
        for i in others:
            images[GenId("a", i, k + 1)] = _a(ring, i, k)
            images[GenId("a", k + 1, i)] = _a(ring, k, i)
            cross = _a(ring, i, k) * _a(ring, k, k + 1)
            if i < k:
                images[GenId("a", i, k)] = _a(ring, i, k + 1) - cross
            else:
                images[GenId("a", i, k)] = _a(ring, i, k + 1) - cross.scale(tk_over_tk1)
            images[GenId("a", k, i)] = (_a(ring, k + 1, i)
                                        - _a(ring, k + 1, k) * _a(ring, k, i))
    else:
        images[GenId("a", k, k + 1)] = _a(ring, k + 1, k).scale(-tk_over_tk1)
        images[GenId("a", k + 1, k)] = _a(ring, k, k + 1, -1)
        for i in others:
            images[GenId("a", i, k)] = _a(ring, i, k + 1)
            images[GenId("a", k, i)] = _a(ring, k + 1, i)
            cross = _a(ring, i, k + 1) * _a(ring, k + 1, k)
            if i < k:
                images[GenId("a", i, k + 1)] = _a(ring, i, k) - cross.scale(tk_over_tk1)
            else:
                images[GenId("a", i, k + 1)] = _a(ring, i, k) - cross
            images[GenId("a", k + 1, i)] = (_a(ring, k, i)
                                            - _a(ring, k, k + 1) * _a(ring, k + 1, i))

    return GenSubstitution(ring, images, {k: k + 1, k + 1: k})


_EXT_CACHE: dict[tuple[int, tuple], GenSubstitution] = {}
_CACHE_LIMIT = 200


def _cache_put(cache: dict, key, value) -> None:
    """Insert with a crude size bound: drop the oldest half when full.

    Corpus enumeration visits words depth-first, so only the current word's
    prefixes need to stay cached; evicting old entries keeps memory flat.
    """
    if len(cache) >= _CACHE_LIMIT:
        for k in list(cache)[: _CACHE_LIMIT // 2]:
            del cache[k]
    cache[key] = value


def clear_action_cache() -> None:
    _EXT_CACHE.clear()
    _MATRIX_CACHE.clear()
    _LR_CACHE.clear()
    _A_CONJ_CACHE.clear()
    _ELIM_MEMO.clear()
    _phi_generator_cached.cache_clear()
    _letter_matrices.cache_clear()


@lru_cache(maxsize=None)
def _phi_generator_cached(k: int, sign: int, n: int,
                          labels: tuple[int, ...]) -> GenSubstitution:
    return phi_generator(k, sign, n, labels=labels, ring=action_ring(n))


def _phi_extended(n: int, letters: tuple[tuple[int, int], ...]) -> GenSubstitution:
    """Memoized composed action on the (0..n)-labeled extended algebra.

    phi_w = phi_{first letter} o phi_{rest}, computed by applying the
    single-letter substitution to the already-composed tail.  Composing on
    the outside keeps every step linear in the size of the accumulated
    images (each generator maps to at most two words), where composing on
    the inside would multiply large images together.
    """
    key = (n, letters)
    cached = _EXT_CACHE.get(key)
    if cached is not None:
        return cached
    labels = tuple(range(0, n + 1))
    if not letters:
        sub = GenSubstitution(action_ring(n))
    else:
        k, s = letters[0]
        sub = _phi_generator_cached(k, s, n, labels).compose(
            _phi_extended(n, letters[1:]))
    _cache_put(_EXT_CACHE, key, sub)
    return sub


def _restrict_to_braid_strands(sub: GenSubstitution, n: int) -> GenSubstitution:
    """Drop the idle 0-strand: the action on labels 1..n is the restriction."""
    images = {g: img for g, img in sub.images.items()
              if g.i >= 1 and g.j >= 1}
    return GenSubstitution(sub.ring, images, sub.tilde_perm)


def phi_braid(braid: BraidWord, labels: tuple[int, ...] | None = None,
              ring: RingDescriptor | None = None) -> GenSubstitution:
    """Composed action of a braid word (first letter outermost)."""
    n = braid.strands
    if labels is None and ring is None:
        return _restrict_to_braid_strands(_phi_extended(n, braid.letters), n)
    if ring is None:
        ring = action_ring(n)
    acc = GenSubstitution(ring)
    for k, s in reversed(braid.letters):
        acc = phi_generator(k, s, n, labels=labels, ring=ring).compose(acc)
    return acc


_ELIM_MEMO: dict[tuple, dict[int, int]] = {}


def eliminate_tilde(x: NcPoly, comp: ComponentData,
                    target: RingDescriptor) -> NcPoly:
    """Identify each t_i with the meridian of strand i's component.

    Works at the level of packed monomial keys (every t_i image is a single
    meridian variable), with a memo shared across calls since the same
    monomials recur constantly.
    """
    src = x.ring
    alpha = tuple(comp.alpha[i] for i in range(1, src.n_tilde + 1))
    memo = _ELIM_MEMO.setdefault((src, target, alpha), {})
    names = src.var_names
    t_targets = {f"t{i}": f"m{a}" for i, a in zip(range(1, src.n_tilde + 1), alpha)}

    def translate(key: int) -> int:
        k2 = memo.get(key)
        if k2 is None:
            if len(memo) >= 500_000:
                memo.clear()
            exps: dict[int, int] = {}
            for pos, e in enumerate(src.unpack(key)):
                if e:
                    name = names[pos]
                    tpos = target.var_index(t_targets.get(name, name))
                    exps[tpos] = exps.get(tpos, 0) + e
            vec = [0] * target.nvars
            for pos, e in exps.items():
                vec[pos] = e
            k2 = target.pack(vec)
            memo[key] = k2
        return k2

    out_terms = {}
    for w, c in x.terms.items():
        merged: dict[int, int] = {}
        for key, v in c.terms.items():
            k2 = translate(key)
            s = merged.get(k2, 0) + v
            if s:
                merged[k2] = s
            elif k2 in merged:
                del merged[k2]
        if merged:
            out_terms[w] = CoeffPoly._raw(target, merged)
    return NcPoly._raw(target, out_terms)


def _extract_matrices(phi_ext: GenSubstitution, n: int) -> tuple[NcMatrix, NcMatrix]:
    """Read L, R off the images of the 0-strand generators."""
    ring = phi_ext.ring
    left = [[NcPoly.zero(ring) for _ in range(n)] for _ in range(n)]
    right = [[NcPoly.zero(ring) for _ in range(n)] for _ in range(n)]
    for i in range(1, n + 1):
        img = phi_ext.image_of(GenId("a", i, 0))
        for word, coeff in img.terms.items():
            if not word or word[-1].family != "a" or word[-1].j != 0:
                raise InternalVerificationError(
                    f"image of a_{i}_0 has a term not ending in a_*_0: {img}")
            j = word[-1].i
            prefix = word[:-1]
            if any(0 in (g.i, g.j) for g in prefix):
                raise InternalVerificationError(
                    f"strand-0 generator inside a left coefficient: {img}")
            left[i - 1][j - 1] = left[i - 1][j - 1] + NcPoly(ring, {prefix: coeff})
    for j in range(1, n + 1):
        img = phi_ext.image_of(GenId("a", 0, j))
        for word, coeff in img.terms.items():
            if not word or word[0].family != "a" or word[0].i != 0:
                raise InternalVerificationError(
                    f"image of a_0_{j} has a term not starting with a_0_*: {img}")
            i = word[0].j
            suffix = word[1:]
            if any(0 in (g.i, g.j) for g in suffix):
                raise InternalVerificationError(
                    f"strand-0 generator inside a right coefficient: {img}")
            right[i - 1][j - 1] = right[i - 1][j - 1] + NcPoly(ring, {suffix: coeff})
    return NcMatrix(left), NcMatrix(right)


@lru_cache(maxsize=None)
def _letter_matrices(n: int, k: int, sign: int
                     ) -> tuple[NcMatrix, NcMatrix, NcMatrix, NcMatrix]:
    """(L, R, L^{-1}, R^{-1}) of a single Artin generator.

    The inverses come from the group law applied to the opposite letter:
    R_sigma^{-1} = phi_sigma(R of sigma^{-1}); entries stay tiny.
    """
    phi_letter = _phi_extended(n, ((k, sign),))
    left, right = _extract_matrices(phi_letter, n)
    phi_sub = phi_braid(BraidWord(n, ((k, sign),)))
    left_op, right_op = _extract_matrices(_phi_extended(n, ((k, -sign),)), n)
    left_inv = left_op.map_entries(phi_sub.apply)
    right_inv = right_op.map_entries(phi_sub.apply)
    for m, inv in ((left, left_inv), (right, right_inv)):
        if not (m * inv).is_identity() or not (inv * m).is_identity():
            raise InternalVerificationError("single-letter inverse check failed")
    return left, right, left_inv, right_inv


_MATRIX_CACHE: dict[tuple[int, tuple], tuple] = {}


def _action_matrices(n: int, letters: tuple[tuple[int, int], ...]
                     ) -> tuple[NcMatrix, NcMatrix, NcMatrix, NcMatrix]:
    """(L, R, L^{-1}, R^{-1}) of a word over the t-variable ring, memoized.

    Prepending one letter uses the composition law (phi is a homomorphism
    and phi_{sw}(A) = phi_s(L_w) L_s A R_s phi_s(R_w)):

        L(s.w) = phi_s(L(w)) * L(s),        R(s.w) = R(s) * phi_s(R(w)),
        Linv(s.w) = Linv(s) * phi_s(Linv(w)),  Rinv(s.w) = phi_s(Rinv(w)) * Rinv(s).

    Only the cheap single-letter substitution ever touches the large
    accumulated matrices; the letter matrices are sparse, so each step costs
    about the size of its output.
    """
    key = (n, letters)
    cached = _MATRIX_CACHE.get(key)
    if cached is not None:
        return cached
    if not letters:
        ring = action_ring(n)
        ident = NcMatrix.identity(ring, n)
        result = (ident, ident, ident, ident)
    else:
        l_rest, r_rest, linv_rest, rinv_rest = _action_matrices(n, letters[1:])
        k, s = letters[0]
        l_s, r_s, linv_s, rinv_s = _letter_matrices(n, k, s)
        phi_s = _phi_generator_cached(k, s, n, tuple(range(1, n + 1)))
        result = (phi_s.apply_matrix(l_rest) * l_s,
                  r_s * phi_s.apply_matrix(r_rest),
                  linv_s * phi_s.apply_matrix(linv_rest),
                  phi_s.apply_matrix(rinv_rest) * rinv_s)
    _cache_put(_MATRIX_CACHE, key, result)
    return result


_LR_CACHE: dict[tuple[int, tuple], tuple[NcMatrix, NcMatrix]] = {}


def _lr_matrices(n: int, letters: tuple[tuple[int, int], ...]
                 ) -> tuple[NcMatrix, NcMatrix]:
    """(L, R) only, skipping the inverses.

    The inverses of a long word can be orders of magnitude larger than L and
    R themselves, so callers that do not need them (augmentation counting)
    use this route.
    """
    key = (n, letters)
    cached = _LR_CACHE.get(key)
    if cached is not None:
        return cached
    if not letters:
        ident = NcMatrix.identity(action_ring(n), n)
        result = (ident, ident)
    else:
        l_rest, r_rest = _lr_matrices(n, letters[1:])
        k, s = letters[0]
        l_s, r_s, _, _ = _letter_matrices(n, k, s)
        phi_s = _phi_generator_cached(k, s, n, tuple(range(1, n + 1)))
        result = (phi_s.apply_matrix(l_rest) * l_s,
                  r_s * phi_s.apply_matrix(r_rest))
    _cache_put(_LR_CACHE, key, result)
    return result


def lr_matrices(braid: BraidWord, target: RingDescriptor,
                components: ComponentData | None = None
                ) -> tuple[NcMatrix, NcMatrix]:
    """(Phi^L, Phi^R) over ``target``, without computing their inverses."""
    comp = components if components is not None else link_components(braid)
    left_t, right_t = _lr_matrices(braid.strands, braid.letters)
    return (left_t.map_entries(lambda x: eliminate_tilde(x, comp, target)),
            right_t.map_entries(lambda x: eliminate_tilde(x, comp, target)))


_A_CONJ_CACHE: dict[tuple[int, tuple], NcMatrix] = {}


def _a_conjugate_matrix(n: int, letters: tuple[tuple[int, int], ...]) -> NcMatrix:
    """phi_w applied entrywise to the weighted a-matrix, memoized.

    Left-incremental like ``_action_matrices``: phi_{s.w}(A) = phi_s(phi_w(A)),
    so each step is a single-letter substitution on the accumulated matrix.
    """
    key = (n, letters)
    cached = _A_CONJ_CACHE.get(key)
    if cached is not None:
        return cached
    if not letters:
        result = a_weight_matrix(n)
    else:
        k, s = letters[0]
        phi_s = _phi_generator_cached(k, s, n, tuple(range(1, n + 1)))
        result = phi_s.apply_matrix(_a_conjugate_matrix(n, letters[1:]))
    _cache_put(_A_CONJ_CACHE, key, result)
    return result


def phi_matrices(braid: BraidWord) -> tuple[NcMatrix, NcMatrix]:
    """Left/right matrices of the action, still over the t-variable ring."""
    left, right, _, _ = _action_matrices(braid.strands, braid.letters)
    return left, right


def a_weight_matrix(n: int) -> NcMatrix:
    """The a-generator matrix over the t-variable ring.

    Entries: a_ij above the diagonal, t_j * a_ij below, 1 + t_i on it
    (t_i stands in for the meridian of strand i before closing the braid).
    """
    ring = action_ring(n)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                row.append(NcPoly.scalar(
                    CoeffPoly.one(ring) + CoeffPoly.var(ring, f"t{i}")))
            elif i < j:
                row.append(_a(ring, i, j))
            else:
                row.append(_a(ring, i, j).scale(CoeffPoly.var(ring, f"t{j}")))
        rows.append(row)
    return NcMatrix(rows)


def phi_a_matrix(braid: BraidWord) -> NcMatrix:
    """phi_B applied entrywise to the weighted a-matrix, over the t-ring."""
    return _a_conjugate_matrix(braid.strands, braid.letters)


def conjugation_identity_holds(braid: BraidWord) -> bool:
    """Exact check that phi_B(A) = L * A * R over the t-variable ring.

    The product is expanded as (L * A) * R: both factors of each partial
    product are no bigger than the conjugated matrix itself, so this
    bracketing stays proportional to the size of the final answer.
    """
    n = braid.strands
    left, right, _, _ = _action_matrices(n, braid.letters)
    rhs = (left * a_weight_matrix(n)) * right
    return phi_a_matrix(braid) == rhs


@dataclass
class PhiData:
    """Everything the DGA needs from the braid action, post-elimination.

    The matrices live over ``ring`` (the DGA coefficient ring).  ``phi_A``
    is phi_B applied entrywise to the weighted a-matrix; the inverse
    matrices are built by the group law and their products with L and R are
    checked by the structural verifier, not here.
    """

    braid: BraidWord
    components: ComponentData
    ring: RingDescriptor
    phi_L: NcMatrix
    phi_R: NcMatrix
    phi_L_inv: NcMatrix
    phi_R_inv: NcMatrix
    phi_A: NcMatrix


def compute_phi_data(braid: BraidWord, target: RingDescriptor,
                     components: ComponentData | None = None) -> PhiData:
    """Build the action matrices and phi_B(A) over ``target``."""
    comp = components if components is not None else link_components(braid)
    left_t, right_t, left_inv_t, right_inv_t = _action_matrices(
        braid.strands, braid.letters)

    def elim(m: NcMatrix) -> NcMatrix:
        return m.map_entries(lambda x: eliminate_tilde(x, comp, target))

    return PhiData(braid, comp, target,
                   elim(left_t), elim(right_t),
                   elim(left_inv_t), elim(right_inv_t),
                   elim(phi_a_matrix(braid)))


def matrix_inverses_by_group_law(braid: BraidWord) -> tuple[NcMatrix, NcMatrix]:
    """(L^{-1}, R^{-1}) computed directly as phi_B of the inverse word's matrices.

    Slower than the incremental route of ``_action_matrices`` (phi_B gets
    applied to long words) but independent of it; used as an oracle in tests.
    """
    phi_tilde = phi_braid(braid)
    rev = inverse_braid(braid)
    left_rev, right_rev = phi_matrices(rev)
    return (phi_tilde.apply_matrix(left_rev), phi_tilde.apply_matrix(right_rev))


def phi_matrix_inverses(braid: BraidWord) -> tuple[NcMatrix, NcMatrix]:
    """(L^{-1}, R^{-1}) over the t-variable ring, verified against L, R."""
    left_t, right_t, left_inv, right_inv = _action_matrices(
        braid.strands, braid.letters)
    for m, inv in ((left_t, left_inv), (right_t, right_inv)):
        if not (m * inv).is_identity() or not (inv * m).is_identity():
            raise InternalVerificationError("action matrix inverse check failed")
    return left_inv, right_inv
