"""The graded noncommutative free unital algebra over the coefficient ring.

Generators come in four families: a (degree 0), b (degree 1), c (degree 1),
e (degree 2), each indexed by an ordered pair of strand labels (a, b need
distinct labels; c, e allow equal ones).  An ``NcPoly`` is a finite sum of
terms (coefficient, word of generators); words never commute.

Canonical form sorts words by (length, lexicographic), which makes symbolic
equality and golden-file comparisons stable.
"""

from __future__ import annotations

from typing import Iterator, Mapping, NamedTuple

from .coeff import CoeffPoly, RingDescriptor
from .errors import RingMismatchError, SubstitutionError

GEN_DEGREE = {"a": 0, "b": 1, "c": 1, "e": 2}

INHOMOGENEOUS = None  # sentinel returned by degree_of


class GenId(NamedTuple):
    family: str
    i: int
    j: int

    @property
    def degree(self) -> int:
        return GEN_DEGREE[self.family]

    @property
    def name(self) -> str:
        return f"{self.family}_{self.i}_{self.j}"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def from_name(cls, name: str) -> "GenId":
        fam, i, j = name.split("_")
        if fam not in GEN_DEGREE:
            raise ValueError(f"unknown generator family {fam!r}")
        g = cls(fam, int(i), int(j))
        g.validate()
        return g

    def validate(self):
        if self.family not in GEN_DEGREE:
            raise ValueError(f"unknown generator family {self.family!r}")
        if self.family in ("a", "b") and self.i == self.j:
            raise ValueError(f"{self.family}-generators need distinct indices")


def word_degree(word: tuple[GenId, ...]) -> int:
    return sum(g.degree for g in word)


def _word_key(word: tuple[GenId, ...]):
    return (len(word), word)


def _acc_into(acc: dict, terms: Mapping) -> None:
    """Merge ``terms`` (word -> CoeffPoly) into ``acc`` in place."""
    for w, c in terms.items():
        if w in acc:
            s = acc[w] + c
            if s.terms:
                acc[w] = s
            else:
                del acc[w]
        else:
            acc[w] = c


class NcPoly:
    """Noncommutative polynomial: dict word -> nonzero CoeffPoly."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingDescriptor,
                 terms: Mapping[tuple[GenId, ...], CoeffPoly]):
        self.ring = ring
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    @classmethod
    def _raw(cls, ring: RingDescriptor, terms: dict) -> "NcPoly":
        """Internal constructor: ``terms`` already canonical (no zero coeffs)."""
        self = object.__new__(cls)
        self.ring = ring
        self.terms = terms
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "NcPoly":
        return cls(ring, {})

    @classmethod
    def scalar(cls, coeff: CoeffPoly) -> "NcPoly":
        return cls(coeff.ring, {(): coeff})

    @classmethod
    def one(cls, ring: RingDescriptor) -> "NcPoly":
        return cls.scalar(CoeffPoly.one(ring))

    @classmethod
    def gen(cls, ring: RingDescriptor, g: GenId, coeff: CoeffPoly | int = 1) -> "NcPoly":
        g.validate()
        c = CoeffPoly.integer(ring, coeff) if isinstance(coeff, int) else coeff
        return cls(ring, {(g,): c})

    # -- predicates / queries ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def generators_used(self) -> set[GenId]:
        return {g for w in self.terms for g in w}

    def degree(self):
        """Common degree of a homogeneous nonzero value, else INHOMOGENEOUS."""
        if self.is_zero():
            raise ValueError("degree of zero polynomial")
        degs = {word_degree(w) for w in self.terms}
        return degs.pop() if len(degs) == 1 else INHOMOGENEOUS

    def sorted_terms(self) -> Iterator[tuple[tuple[GenId, ...], CoeffPoly]]:
        return iter(sorted(self.terms.items(), key=lambda t: _word_key(t[0])))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "NcPoly"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError(f"rings differ: {self.ring} vs {other.ring}")

    def __add__(self, other: "NcPoly") -> "NcPoly":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out[w] + c if w in out else c
            if s.terms:
                out[w] = s
            else:
                del out[w]
        return NcPoly._raw(self.ring, out)

    def __neg__(self) -> "NcPoly":
        return NcPoly._raw(self.ring, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __mul__(self, other) -> "NcPoly":
        if isinstance(other, (int, CoeffPoly)):
            return self.scale(other)
        self._check(other)
        zk = self.ring.zero_key
        # accumulate raw coefficient dicts per word to avoid per-pair objects
        acc: dict[tuple[GenId, ...], dict[int, int]] = {}
        for w1, c1 in self.terms.items():
            t1 = c1.terms
            for w2, c2 in other.terms.items():
                w = w1 + w2
                bucket = acc.get(w)
                if bucket is None:
                    bucket = acc[w] = {}
                bget = bucket.get
                for e1, a1 in t1.items():
                    base = e1 - zk
                    for e2, a2 in c2.terms.items():
                        e = base + e2
                        s = bget(e, 0) + a1 * a2
                        if s:
                            bucket[e] = s
                        elif e in bucket:
                            del bucket[e]
        out = {w: CoeffPoly._raw(self.ring, b) for w, b in acc.items() if b}
        return NcPoly._raw(self.ring, out)

    def __rmul__(self, other) -> "NcPoly":
        if isinstance(other, (int, CoeffPoly)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: CoeffPoly | int) -> "NcPoly":
        if isinstance(c, int):
            c = CoeffPoly.integer(self.ring, c)
        if c.ring is not self.ring and c.ring != self.ring:
            raise RingMismatchError("scalar from a different ring")
        out = {}
        for w, x in self.terms.items():
            xc = x * c
            if xc.terms:
                out[w] = xc
        return NcPoly._raw(self.ring, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, NcPoly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.ring, frozenset((w, c) for w, c in self.terms.items())))

    # -- substitution ------------------------------------------------------

    def map_coeffs(self, f) -> "NcPoly":
        """Apply ``f: CoeffPoly -> CoeffPoly`` to every coefficient."""
        out: dict[tuple[GenId, ...], CoeffPoly] = {}
        ring = None
        for w, c in self.terms.items():
            fc = f(c)
            ring = fc.ring
            if not fc.is_zero():
                out[w] = fc
        if ring is None:
            ring = f(CoeffPoly.zero(self.ring)).ring
        return NcPoly(ring, out)

    def substitute_gens(self, images: Mapping[GenId, "NcPoly"]) -> "NcPoly":
        """Unital algebra homomorphism fixing coefficients: g -> images[g]
        (identity where unspecified)."""
        acc: dict[tuple[GenId, ...], CoeffPoly] = {}
        for w, c in self.terms.items():
            term = NcPoly._raw(self.ring, {(): c})
            for g in w:
                img = images.get(g)
                if img is None:
                    term = NcPoly._raw(self.ring,
                                       {pw + (g,): pc for pw, pc in term.terms.items()})
                else:
                    term = term * img
            _acc_into(acc, term.terms)
        return NcPoly._raw(self.ring, acc)

    # -- rendering ---------------------------------------------------------

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            cs = c.to_text()
            ws = "*".join(g.name for g in w)
            if not w:
                parts.append(f"({cs})")
            else:
                parts.append(f"({cs})*{ws}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"NcPoly({self.to_text()!r})"


class GenSubstitution:
    """Degree-preserving algebra endomorphism given on generators.

    ``images`` maps generators to their images (identity where missing);
    ``tilde_perm`` permutes the auxiliary t-variables of the coefficient
    ring (used by the braid action, where each Artin generator swaps two
    per-strand meridians).
    """

    def __init__(self, ring: RingDescriptor,
                 images: Mapping[GenId, NcPoly] | None = None,
                 tilde_perm: Mapping[int, int] | None = None):
        self.ring = ring
        self.images = dict(images or {})
        for g, img in self.images.items():
            if img.ring != ring:
                raise RingMismatchError(f"image of {g} in wrong ring")
            if not img.is_zero() and img.degree() != g.degree:
                raise SubstitutionError(
                    f"image of {g} is not homogeneous of degree {g.degree}")
        perm = dict(tilde_perm or {})
        self.tilde_perm = {i: j for i, j in perm.items() if i != j}
        for i in self.tilde_perm:
            if not 1 <= i <= ring.n_tilde or not 1 <= self.tilde_perm[i] <= ring.n_tilde:
                raise SubstitutionError("tilde permutation index out of range")

    def is_identity(self) -> bool:
        if self.tilde_perm:
            return False
        return all(img == NcPoly.gen(self.ring, g) for g, img in self.images.items())

    def _permute_coeff(self, c: CoeffPoly) -> CoeffPoly:
        if not self.tilde_perm:
            return c
        ring = self.ring
        base = 2 * ring.r
        out = {}
        for key, v in c.terms.items():
            e = ring.unpack(key)
            e2 = list(e)
            for i, j in self.tilde_perm.items():
                e2[base + j - 1] = e[base + i - 1]
            out[ring.pack(e2)] = v
        return CoeffPoly._raw(self.ring, out)

    def apply(self, x: NcPoly) -> NcPoly:
        if x.ring is not self.ring and x.ring != self.ring:
            raise RingMismatchError("value from a different ring")
        acc: dict[tuple[GenId, ...], CoeffPoly] = {}
        for w, c in x.terms.items():
            term = NcPoly._raw(self.ring, {(): self._permute_coeff(c)})
            for g in w:
                img = self.images.get(g)
                if img is None:
                    term = NcPoly._raw(self.ring,
                                       {pw + (g,): pc for pw, pc in term.terms.items()})
                else:
                    term = term * img
            _acc_into(acc, term.terms)
        return NcPoly._raw(self.ring, acc)

    def image_of(self, g: GenId) -> NcPoly:
        return self.images.get(g, NcPoly.gen(self.ring, g))

    def apply_matrix(self, m: "NcMatrix") -> "NcMatrix":
        return m.map_entries(self.apply)

    def compose(self, inner: "GenSubstitution") -> "GenSubstitution":
        """self o inner (apply ``inner`` first)."""
        if self.ring != inner.ring:
            raise RingMismatchError("substitutions over different rings")
        images = {}
        for g in set(self.images) | set(inner.images):
            images[g] = self.apply(inner.image_of(g))
        perm = {}
        n = self.ring.n_tilde
        sp = self.tilde_perm
        ip = inner.tilde_perm
        for i in range(1, n + 1):
            perm[i] = sp.get(ip.get(i, i), ip.get(i, i))
        return GenSubstitution(self.ring, images, perm)


class NcMatrix:
    """Square matrix with NcPoly entries."""

    __slots__ = ("ring", "entries")

    def __init__(self, entries: list[list[NcPoly]]):
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("matrix must be square")
        if n == 0:
            raise ValueError("empty matrix")
        self.ring = entries[0][0].ring
        for row in entries:
            for x in row:
                if x.ring != self.ring:
                    raise RingMismatchError("mixed rings in matrix")
        self.entries = [list(row) for row in entries]

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int) -> "NcMatrix":
        return cls([[NcPoly.one(ring) if i == j else NcPoly.zero(ring)
                     for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, scalars: list[CoeffPoly]) -> "NcMatrix":
        ring = scalars[0].ring
        n = len(scalars)
        return cls([[NcPoly.scalar(scalars[i]) if i == j else NcPoly.zero(ring)
                     for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> NcPoly:
        i, j = ij
        return self.entries[i][j]

    def _check(self, other: "NcMatrix"):
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        if self.ring != other.ring:
            raise RingMismatchError("matrices over different rings")

    def __add__(self, other: "NcMatrix") -> "NcMatrix":
        self._check(other)
        return NcMatrix([[a + b for a, b in zip(r1, r2)]
                         for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "NcMatrix") -> "NcMatrix":
        self._check(other)
        return NcMatrix([[a - b for a, b in zip(r1, r2)]
                         for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "NcMatrix":
        return NcMatrix([[-a for a in row] for row in self.entries])

    def __mul__(self, other: "NcMatrix") -> "NcMatrix":
        self._check(other)
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc: dict[tuple[GenId, ...], CoeffPoly] = {}
                for k in range(n):
                    x = self.entries[i][k]
                    y = other.entries[k][j]
                    if not x.terms or not y.terms:
                        continue
                    _acc_into(acc, (x * y).terms)
                row.append(NcPoly._raw(self.ring, acc))
            out.append(row)
        return NcMatrix(out)

    def map_entries(self, f) -> "NcMatrix":
        return NcMatrix([[f(x) for x in row] for row in self.entries])

    def __eq__(self, other) -> bool:
        return (isinstance(other, NcMatrix) and self.n == other.n
                and self.entries == other.entries)

    def is_identity(self) -> bool:
        return self == NcMatrix.identity(self.ring, self.n)

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in row)
                               for row in self.entries) + "]"
