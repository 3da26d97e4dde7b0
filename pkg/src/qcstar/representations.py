"""Truncated matrix models of the built-in *-algebras.

Every infinite-dimensional representation here is a weighted shift on a
basis e_0 .. e_{N-1}: a generator sends e_k to a scalar times e_{k+d}
for a fixed displacement d, and anything landing outside the truncation
window is dropped.  Dropping only corrupts entries near the top index,
so all assertions restrict to a compressed block: rows and columns
0 .. N-1-margin, where margin is the shift bound times the word degree
involved.  On that block the truncated matrices agree exactly with the
infinite model, and residuals are pure floating-point roundoff.

The independence check for the projective-space basis monomials works in
exact rational arithmetic.  Each basis family acts on e_n by a rational
multiple of a single square root, and the square root is shared by all
monomials of the same displacement class, so it cancels from the linear
systems and coefficient recovery reduces to exact Vandermonde solves.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ncalgebra
from .coefficients import QLaurent
from .ncalgebra import AlgebraPresentation, Element, GeneratorMap


class RepresentationError(ValueError):
    """Invalid representation request or mismatched evaluation."""


REP_NAMES = ("rho_plus", "rho_minus", "pi_plus", "pi_minus",
             "rho_rp2", "rho_theta")


class Representation:
    """Generator-to-matrix assignment over a fixed presentation.

    block_dims records the direct-sum structure; compression windows are
    applied per block so boundary artifacts of every summand are masked.
    """

    def __init__(self, presentation: AlgebraPresentation, name: str,
                 q: float, matrices: dict[int, np.ndarray],
                 block_dims: tuple[int, ...], shift_bound: int,
                 spectra: dict[str, np.ndarray] | None = None,
                 theta: float | None = None):
        self.presentation = presentation
        self.name = name
        self.q = q
        self.theta = theta
        self.block_dims = tuple(block_dims)
        self.dim = sum(block_dims)
        self.shift_bound = shift_bound
        self.matrices = {i: np.asarray(m, dtype=complex)
                         for i, m in matrices.items()}
        self.spectra = dict(spectra or {})
        for i, m in self.matrices.items():
            if m.shape != (self.dim, self.dim):
                raise RepresentationError(
                    f"matrix for {presentation.generators[i]} has shape {m.shape}")

    def matrix(self, gen_name: str) -> np.ndarray:
        return self.matrices[self.presentation.gen_index(gen_name)]

    def good_indices(self, margin: int) -> np.ndarray:
        idx = []
        offset = 0
        for nb in self.block_dims:
            idx.extend(range(offset, offset + max(nb - margin, 0)))
            offset += nb
        if not idx:
            raise RepresentationError(
                f"truncation dimension {self.dim} leaves no compressed block "
                f"at margin {margin}")
        return np.array(idx, dtype=int)

    def compress(self, mat: np.ndarray, margin: int) -> np.ndarray:
        g = self.good_indices(margin)
        return mat[np.ix_(g, g)]


def _weighted_shift(dim: int, displacement: int, weight) -> np.ndarray:
    """Matrix sending e_k to weight(k) * e_{k+displacement}, truncated."""
    m = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        j = k + displacement
        if 0 <= j < dim:
            m[j, k] = weight(k)
    return m


def build_rep(name: str, q: float = 0.5, dim: int = 64,
              theta: float = 0.0) -> Representation:
    """Construct a named representation at truncation dimension dim.

    rho_plus / rho_minus act on the self-adjoint quantum SU(2) quotient,
    pi_plus / pi_minus are their pullbacks to the sphere along the
    isomorphism (structurally composed, not re-coded), rho_rp2 is the
    infinite-dimensional projective-space representation, and rho_theta
    is its one-dimensional circle family (theta is only used there).
    """
    if not 0.0 < q < 1.0:
        raise RepresentationError("q must lie strictly between 0 and 1")
    if name == "rho_theta":
        p = ncalgebra.presentation("rp2")
        z = cmath.exp(1j * theta)
        one = np.zeros((1, 1), dtype=complex)
        mats = {
            p.gen_index("P"): one.copy(),
            p.gen_index("T"): one.copy(),
            p.gen_index("T*"): one.copy(),
            p.gen_index("R"): np.array([[z]], dtype=complex),
            p.gen_index("R*"): np.array([[z.conjugate()]], dtype=complex),
        }
        spectra = {"P": np.zeros(1)}
        return Representation(p, name, q, mats, (1,), 0,
                              spectra=spectra, theta=theta)
    if dim < 4:
        raise RepresentationError("truncation dimension must be at least 4")
    if name in ("rho_plus", "rho_minus"):
        sign = 1.0 if name == "rho_plus" else -1.0
        p = ncalgebra.presentation("suq2_mod_b")
        a = _weighted_shift(dim, -1, lambda k: math.sqrt(1.0 - q ** (4 * k)))
        b = np.diag(np.array([sign * q ** (2 * (k + 1)) for k in range(dim)],
                             dtype=complex))
        mats = {
            p.gen_index("a"): a,
            p.gen_index("a*"): a.conj().T,
            p.gen_index("b"): b,
        }
        spectra = {"b": np.array([sign * q ** (2 * (k + 1)) for k in range(dim)])}
        return Representation(p, name, q, mats, (dim,), 1, spectra=spectra)
    if name in ("pi_plus", "pi_minus"):
        inner = build_rep("rho_plus" if name == "pi_plus" else "rho_minus",
                          q, dim)
        rep = compose_rep(inner, ncalgebra.builtin_morphism("F"), name=name)
        sign = 1.0 if name == "pi_plus" else -1.0
        rep.spectra["K"] = np.array([sign * q ** (2 * k) for k in range(dim)])
        return rep
    if name == "rho_rp2":
        p = ncalgebra.presentation("rp2")
        pmat = np.diag(np.array([q ** (4 * k) for k in range(dim)],
                                dtype=complex))
        t = _weighted_shift(
            dim, -1,
            lambda k: q ** (2 * (k - 1)) * math.sqrt(1.0 - q ** (4 * k)))
        r = _weighted_shift(
            dim, -2,
            lambda k: math.sqrt(max((1.0 - q ** (4 * k))
                                    * (1.0 - q ** (4 * (k - 1))), 0.0)))
        mats = {
            p.gen_index("P"): pmat,
            p.gen_index("T"): t,
            p.gen_index("T*"): t.conj().T,
            p.gen_index("R"): r,
            p.gen_index("R*"): r.conj().T,
        }
        spectra = {"P": np.array([q ** (4 * k) for k in range(dim)])}
        return Representation(p, name, q, mats, (dim,), 2, spectra=spectra)
    raise RepresentationError(f"unknown representation {name!r}")


def compose_rep(rep: Representation, gmap: GeneratorMap,
                name: str | None = None) -> Representation:
    """Pull a representation of gmap's target back to its source.

    Each source generator is sent to the evaluated matrix of its image
    element.  The numeric parameter transforms by the map's exponent
    scale, so source coefficients evaluate consistently.
    """
    if gmap.target is not rep.presentation:
        raise RepresentationError("map target does not match representation")
    mats = {}
    max_deg = 1
    for i in range(len(gmap.source.generators)):
        img = gmap.images[i]
        mats[i] = evaluate(img, rep)
        max_deg = max(max_deg, img.degree())
    return Representation(
        gmap.source,
        name or f"{rep.name}.{gmap.name}",
        rep.q ** gmap.q_scale,
        mats,
        rep.block_dims,
        rep.shift_bound * max_deg)


def direct_sum(r1: Representation, r2: Representation) -> Representation:
    """Block-diagonal sum of two representations of the same presentation."""
    if r1.presentation is not r2.presentation:
        raise RepresentationError("direct sum needs a common presentation")
    if r1.q != r2.q:
        raise RepresentationError("direct sum needs a common q")
    n1, n2 = r1.dim, r2.dim
    mats = {}
    for i in set(r1.matrices) | set(r2.matrices):
        m = np.zeros((n1 + n2, n1 + n2), dtype=complex)
        m[:n1, :n1] = r1.matrices[i]
        m[n1:, n1:] = r2.matrices[i]
        mats[i] = m
    spectra = {}
    for g in set(r1.spectra) & set(r2.spectra):
        spectra[g] = np.concatenate([r1.spectra[g], r2.spectra[g]])
    return Representation(
        r1.presentation, f"{r1.name}+{r2.name}", r1.q, mats,
        r1.block_dims + r2.block_dims,
        max(r1.shift_bound, r2.shift_bound), spectra=spectra,
        theta=r1.theta)


def evaluate(x: Element, rep: Representation) -> np.ndarray:
    """Linear-multiplicative evaluation of an element; unit word -> identity."""
    if x.presentation is not rep.presentation:
        raise RepresentationError(
            f"element over {x.presentation.name} fed to a representation "
            f"of {rep.presentation.name}")
    total = np.zeros((rep.dim, rep.dim), dtype=complex)
    for word, coeff in x.terms().items():
        m = np.eye(rep.dim, dtype=complex)
        for letter in word:
            m = m @ rep.matrices[letter]
        total += coeff.evaluate(rep.q) * m
    return total


@dataclass(frozen=True)
class ResidualReport:
    rep_name: str
    dim: int
    margin: int
    entries: tuple[tuple[str, float], ...]

    def max_residual(self) -> float:
        return max((v for _, v in self.entries), default=0.0)

    def ok(self, tol: float) -> bool:
        return self.max_residual() <= tol


def relation_residuals(rep: Representation) -> ResidualReport:
    """Max |entry| of evaluate(lhs) - evaluate(rhs) per rule, compressed.

    The compression margin is the shift bound: on that block the
    truncated products agree with the infinite model entry for entry,
    so the reported numbers are pure roundoff plus any genuine defect.
    """
    p = rep.presentation
    g = rep.good_indices(rep.shift_bound)
    entries = []
    for rule in p.rules:
        lhs = Element(p, {rule.left: QLaurent.one()})
        rhs = Element(p, dict(rule.right))
        diff = evaluate(lhs, rep) - evaluate(rhs, rep)
        block = diff[np.ix_(g, g)]
        entries.append((rule.label, float(np.max(np.abs(block)))))
    return ResidualReport(rep.name, rep.dim, rep.shift_bound, tuple(entries))


def element_mismatch(x: Element, y: Element, rep: Representation) -> float:
    """Compressed max |evaluate(x) - evaluate(y)|, margin scaled by degree."""
    margin = rep.shift_bound * max(x.degree(), y.degree(), 1)
    g = rep.good_indices(margin)
    diff = (evaluate(x, rep) - evaluate(y, rep))[np.ix_(g, g)]
    return float(np.max(np.abs(diff)))


def adjoint_mismatch(x: Element, rep: Representation) -> float:
    """Compressed deviation of evaluate(x*) from evaluate(x) conjugate-transposed."""
    margin = rep.shift_bound * max(x.degree(), 1)
    g = rep.good_indices(margin)
    diff = (evaluate(x.star(), rep)
            - evaluate(x, rep).conj().T)[np.ix_(g, g)]
    return float(np.max(np.abs(diff)))


@dataclass(frozen=True)
class SpectrumReport:
    rep_name: str
    generator: str
    is_diagonal: bool
    max_deviation: float


def spectrum_check(rep: Representation, gen_name: str) -> SpectrumReport:
    """Compare a diagonal generator matrix against its expected spectrum."""
    if gen_name not in rep.spectra:
        raise RepresentationError(
            f"no diagonal expectation for {gen_name!r} in {rep.name}")
    m = rep.matrix(gen_name)
    off = m - np.diag(np.diag(m))
    if np.any(off != 0):
        raise RepresentationError(
            f"matrix of {gen_name!r} in {rep.name} is not diagonal")
    dev = np.max(np.abs(np.diag(m) - rep.spectra[gen_name]))
    return SpectrumReport(rep.name, gen_name, True, float(dev))


# -- exact basis-monomial machinery ---------------------------------------------

FAMILIES = ("PR", "PR*", "PRT", "PR*T*")


@dataclass(frozen=True)
class BasisMonomial:
    """One monomial P^k X^l (tail), X and tail fixed by the family tag.

    family "PR"    -> P^k R^l
    family "PR*"   -> P^k R*^l   (l >= 1; l = 0 would duplicate "PR")
    family "PRT"   -> P^k R^l T
    family "PR*T*" -> P^k R*^l T*
    """

    k: int
    l: int
    family: str

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise RepresentationError(f"unknown family {self.family!r}")
        if self.k < 0 or self.l < 0:
            raise RepresentationError("negative exponent")
        if self.family == "PR*" and self.l == 0:
            raise RepresentationError("family PR* starts at l = 1")

    def displacement(self) -> int:
        if self.family == "PR":
            return -2 * self.l
        if self.family == "PR*":
            return 2 * self.l
        if self.family == "PRT":
            return -1 - 2 * self.l
        return 1 + 2 * self.l

    def to_element(self, p: AlgebraPresentation) -> Element:
        body = {"PR": ("R",), "PR*": ("R*",),
                "PRT": ("R",), "PR*T*": ("R*",)}[self.family]
        tail = {"PR": (), "PR*": (), "PRT": ("T",), "PR*T*": ("T*",)}[self.family]
        word = ("P",) * self.k + body * self.l + tail
        return p.word(*word)

    def label(self) -> str:
        bits = []
        if self.k:
            bits.append("P" if self.k == 1 else f"P^{self.k}")
        if self.l:
            base = "R" if self.family in ("PR", "PRT") else "R*"
            bits.append(base if self.l == 1 else f"{base}^{self.l}")
        if self.family == "PRT":
            bits.append("T")
        elif self.family == "PR*T*":
            bits.append("T*")
        return " ".join(bits) if bits else "1"


def basis_monomials(kmax: int, lmax: int) -> tuple[BasisMonomial, ...]:
    """All basis monomials with k <= kmax and l <= lmax (60 at kmax=lmax=3)."""
    out = []
    for k in range(kmax + 1):
        for l in range(lmax + 1):
            out.append(BasisMonomial(k, l, "PR"))
            if l >= 1:
                out.append(BasisMonomial(k, l, "PR*"))
            out.append(BasisMonomial(k, l, "PRT"))
            out.append(BasisMonomial(k, l, "PR*T*"))
    return tuple(out)


def exact_action(m: BasisMonomial, n: int, q: Fraction):
    """Action of the monomial on e_n in exact arithmetic.

    Returns (out_index, rational, radicand) with
    matrix column entry = rational * sqrt(radicand), or None when the
    vector is annihilated.  The radicand depends only on (family, l, n),
    never on k; that is what makes exact coefficient recovery possible.
    """
    q4 = q ** 4
    k, l = m.k, m.l

    def prod_range(lo: int, hi: int) -> Fraction:
        # product of (1 - q^{4j}) for j = lo .. hi; zero when any j <= 0
        total = Fraction(1)
        for j in range(lo, hi + 1):
            if j <= 0:
                return Fraction(0)
            total *= 1 - q4 ** j
        return total

    if m.family == "PRT":
        out = n - 1 - 2 * l
        radicand = (1 - q4 ** n) * prod_range(n - 2 * l, n - 1) \
            if n >= 1 else Fraction(0)
        rational = q ** (2 * (n - 1)) * q4 ** (k * out) if out >= 0 else None
    elif m.family == "PR*T*":
        out = n + 1 + 2 * l
        radicand = (1 - q4 ** (n + 1)) * prod_range(n + 2, n + 1 + 2 * l)
        rational = q ** (2 * n) * q4 ** (k * out)
    elif m.family == "PR":
        out = n - 2 * l
        radicand = prod_range(n - 2 * l + 1, n)
        rational = q4 ** (k * out) if out >= 0 else None
    else:  # PR*
        out = n + 2 * l
        radicand = prod_range(n + 1, n + 2 * l)
        rational = q4 ** (k * out)
    if out < 0 or radicand == 0:
        return None
    return out, rational, radicand


@dataclass(frozen=True)
class IndependenceReport:
    monomial_count: int
    rank: int
    recovery_trials: int
    recovery_max_error: float
    n_max: int

    @property
    def full_rank(self) -> bool:
        return self.rank == self.monomial_count

    def ok(self, tol: float = 1e-8) -> bool:
        return self.full_rank and self.recovery_max_error <= tol


def _solve_exact(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals; raises on singular input."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise RepresentationError("singular recovery system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def independence_check(monomials, q: float = 0.5, n_max: int = 40,
                       trials: int = 100, rng=None,
                       coeff_span: int = 5) -> IndependenceReport:
    """Rank and exact-recovery certificate for a monomial family.

    Rank: the float evaluation matrix (rows = observed (input, output)
    coordinate pairs for inputs 0..n_max, columns = monomials) must have
    numerical rank equal to the monomial count, with columns normalized
    and singular values thresholded at 1e-10 of the largest.

    Recovery: for seeded random integer coefficient vectors, the
    coordinates of the combined action are computed exactly and the
    coefficients are re-extracted by solving one exact linear system per
    displacement class; the shared square root cancels, so recovery is
    exact and the reported error is a hard zero unless something is
    genuinely wrong.
    """
    monomials = tuple(monomials)
    if not monomials:
        raise RepresentationError("empty monomial family")
    qf = Fraction(q)

    # float rank matrix
    row_index: dict[tuple[int, int], int] = {}
    triplets = []
    for col, m in enumerate(monomials):
        for n in range(n_max + 1):
            hit = exact_action(m, n, qf)
            if hit is None:
                continue
            out, rational, radicand = hit
            key = (n, out)
            row = row_index.setdefault(key, len(row_index))
            triplets.append((row, col, float(rational) * math.sqrt(float(radicand))))
    mat = np.zeros((len(row_index), len(monomials)))
    for row, col, val in triplets:
        mat[row, col] += val
    norms = np.linalg.norm(mat, axis=0)
    if np.any(norms == 0):
        raise RepresentationError(
            "a monomial acts as zero on every tested index; raise n_max")
    sing = np.linalg.svd(mat / norms, compute_uv=False)
    rank = int(np.sum(sing > 1e-10 * sing[0]))

    # exact recovery per displacement class
    classes: dict[tuple[str, int], list[int]] = {}
    for idx, m in enumerate(monomials):
        classes.setdefault((m.family, m.l), []).append(idx)

    rng = rng if rng is not None else _default_rng()
    max_err = 0.0
    for _ in range(trials):
        coeffs = [Fraction(rng.randint(-coeff_span, coeff_span))
                  for _ in monomials]
        recovered: list[Fraction | None] = [None] * len(monomials)
        for (family, l), members in classes.items():
            size = len(members)
            nodes = []
            n = 0
            while len(nodes) < size:
                if n > n_max:
                    raise RepresentationError(
                        f"insufficient n_max for family {family} l={l}")
                if exact_action(monomials[members[0]], n, qf) is not None:
                    nodes.append(n)
                n += 1
            # coordinate at node n is sqrt(radicand(n)) * sum_k c_k rat_k(n);
            # the radical is common to the class, so work with the sums
            system = []
            data = []
            for node in nodes:
                rats = []
                for idx in members:
                    out, rational, _ = exact_action(monomials[idx], node, qf)
                    rats.append(rational)
                system.append(rats)
                data.append(sum(c * r for c, r in
                                zip((coeffs[i] for i in members), rats)))
            solved = _solve_exact(system, data)
            for idx, val in zip(members, solved):
                recovered[idx] = val
        err = max(abs(float(r - c)) for r, c in zip(recovered, coeffs))
        max_err = max(max_err, err)
    return IndependenceReport(len(monomials), rank, trials, max_err, n_max)


def _default_rng():
    import random
    return random.Random(0)


def theta_separation(q: float, thetas) -> list[dict]:
    """The circle family tells its members apart.

    For each pair theta_i != theta_j, the element R - e^{i theta_i} is
    killed by the theta_i representation but not by the theta_j one.
    Returns per-pair norms of both evaluations.
    """
    out = []
    for i, t1 in enumerate(thetas):
        rep1 = build_rep("rho_theta", q=q, theta=t1)
        for j, t2 in enumerate(thetas):
            if i == j:
                continue
            # R - e^{i t1}: the scalar is not rational, so assemble numerically
            m1 = rep1.matrix("R") - cmath.exp(1j * t1) * np.eye(1)
            rep2 = build_rep("rho_theta", q=q, theta=t2)
            m2 = rep2.matrix("R") - cmath.exp(1j * t1) * np.eye(1)
            out.append({
                "theta_killed": t1,
                "theta_other": t2,
                "norm_in_own": float(np.abs(m1).max()),
                "norm_in_other": float(np.abs(m2).max()),
            })
    return out
