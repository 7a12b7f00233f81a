"""Pushing covers forward along homomorphisms and lifting them through
finite kernels."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .covering import CoverResult, CoverVerificationError, verify_cover
from .groups import (
    Coords,
    CyclicFinite,
    FreeAbelian,
    GroupSpec,
    Heisenberg3,
    ProductWithFinite,
)
from .products import ElementSet, power, product

LAW_SAMPLES = 500


class HomError(ValueError):
    pass


@dataclass(frozen=True)
class Hom:
    source: GroupSpec
    target: GroupSpec
    kind: str
    fn: Callable[[Coords], Coords]

    def __post_init__(self):
        check_hom_law(self)

    def __call__(self, g: Coords) -> Coords:
        return self.fn(g)

    def image(self, A: ElementSet) -> ElementSet:
        if A.group != self.source:
            raise HomError(f"{self.kind}: set lives in {A.group}, not {self.source}")
        return ElementSet(self.target, {self.fn(a) for a in A.members}, trusted=True)

    @classmethod
    def identity(cls, G: GroupSpec) -> "Hom":
        return cls(G, G, "identity", lambda g: g)

    @classmethod
    def abelianization(cls) -> "Hom":
        """Heisenberg -> Z^2, (a, b, c) -> (a, b)."""
        return cls(Heisenberg3(), FreeAbelian(2), "abelianization", lambda g: (g[0], g[1]))

    @classmethod
    def reduction(cls, source: GroupSpec, modulus: int) -> "Hom":
        """Z -> Z/m, or Z/n -> Z/m for m dividing n."""
        if isinstance(source, FreeAbelian):
            if source.rank != 1:
                raise HomError("reduction needs a rank-1 free abelian source")
        elif isinstance(source, CyclicFinite):
            if source.modulus % modulus:
                raise HomError(f"{modulus} does not divide {source.modulus}")
        else:
            raise HomError(f"no reduction map from {source!r}")
        return cls(source, CyclicFinite(modulus), "reduction", lambda g: (g[0] % modulus,))

    @classmethod
    def project_base(cls, source: ProductWithFinite) -> "Hom":
        return cls(source, source.base, "project_base", lambda g: g[:-1])

    @classmethod
    def project_finite(cls, source: ProductWithFinite) -> "Hom":
        return cls(source, source.finite, "project_finite", lambda g: g[-1:])

    def kernel(self) -> "FiniteKernel":
        """The kernel, when it is finite and known in closed form."""
        S = self.source
        if self.kind == "identity":
            return FiniteKernel(self, ElementSet(S, {S.identity()}, trusted=True))
        if self.kind == "reduction" and isinstance(S, CyclicFinite):
            m = self.target.modulus
            return FiniteKernel(self, ElementSet(S, {(k,) for k in range(0, S.modulus, m)}, trusted=True))
        if self.kind == "project_base":
            e = S.base.identity()
            return FiniteKernel(self, ElementSet(S, {e + (i,) for i in range(S.finite.order)}, trusted=True))
        if self.kind == "project_finite" and S.base.is_finite:
            return FiniteKernel(
                self, ElementSet(S, {(k,) + S.finite.identity() for k in range(S.base.order)}, trusted=True)
            )
        raise HomError(f"{self.kind} has infinite kernel")


def check_hom_law(pi: Hom, samples: int = LAW_SAMPLES, seed: int = 0) -> None:
    rng = random.Random(seed)
    S, T = pi.source, pi.target
    if pi.fn(S.identity()) != T.identity():
        raise HomError(f"{pi.kind} does not send identity to identity")
    for _ in range(samples):
        g, h = S.random_element(rng, 6), S.random_element(rng, 6)
        if pi.fn(S.mul(g, h)) != T.mul(pi.fn(g), pi.fn(h)):
            raise HomError(f"{pi.kind} breaks the homomorphism law at {g}, {h}")


@dataclass(frozen=True)
class FiniteKernel:
    hom: Hom
    elements: ElementSet

    def __post_init__(self):
        K = self.elements
        G = K.group
        if G != self.hom.source:
            raise HomError("kernel must live in the source group")
        e_t = self.hom.target.identity()
        for k in K.members:
            if self.hom.fn(k) != e_t:
                raise HomError(f"{k} does not map to the identity")
            if G.inv(k) not in K.members:
                raise HomError("kernel not closed under inverses")
            for k2 in K.members:
                if G.mul(k, k2) not in K.members:
                    raise HomError("kernel not closed under products")

    def __len__(self) -> int:
        return len(self.elements)


def push_cover(
    pi: Hom, A: ElementSet, X: ElementSet, r: int, h: int, budget: int | None = None
) -> CoverResult:
    """pi(A)^{rh} is covered by pi(X) pi(A)^h whenever A^{rh} is covered by X A^h."""
    if not verify_cover(power(A, r * h, budget), X, power(A, h, budget)):
        raise CoverVerificationError("X does not cover A^{rh} by A^h upstairs")
    piA = pi.image(A)
    piX = pi.image(X)
    mult = power(piA, h, budget)
    ok = verify_cover(power(piA, r * h, budget), piX, mult)
    if len(piX) > len(X):
        raise AssertionError("image larger than source")
    return CoverResult(piX, mult, verified=ok, notes={"source_size": len(X)})


def lift_cover(
    pi: Hom,
    K: FiniteKernel,
    A: ElementSet,
    Y: ElementSet,
    r: int,
    h: int,
    budget: int | None = None,
) -> CoverResult:
    """Lift a downstairs cover Y of pi(A)^{rh} to X = {lift(y) k} upstairs.

    Only y with a preimage among A^{rh} (A^h)^{-1} are kept; any y that
    covers an image point has one there.
    """
    if K.hom != pi:
        raise HomError("kernel belongs to a different homomorphism")
    try:
        known = pi.kernel()
    except HomError:
        known = None
    if known is not None and known.elements != K.elements:
        raise HomError("K is not the kernel of pi")
    piA = pi.image(A)
    if not verify_cover(power(piA, r * h, budget), Y, power(piA, h, budget)):
        raise CoverVerificationError("Y does not cover pi(A)^{rh} by pi(A)^h")
    Arh = power(A, r * h, budget)
    Ah = power(A, h, budget)
    preimage: dict[Coords, Coords] = {}
    for c in product(Arh, Ah.inverse(), budget).sorted():
        preimage.setdefault(pi(c), c)
    kept = [y for y in Y.sorted() if y in preimage]
    G = A.group
    X = ElementSet(G, {G.mul(preimage[y], k) for y in kept for k in K.elements.members}, trusted=True)
    if len(X) > len(K) * len(Y):
        raise AssertionError("lifted cover exceeds |K| |Y|")
    ok = verify_cover(Arh, X, Ah)
    notes = {"kept": len(kept), "dropped": len(Y) - len(kept), "kernel_size": len(K)}
    return CoverResult(X, Ah, verified=ok, notes=notes)
