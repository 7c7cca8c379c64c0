"""Invariant self-test for a single scenario (the ``check`` command)."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import IrrationalNullSpace
from .linalg import annihilator, is_rational
from .seminorm import (bounded_dual, duality_certificate, evaluate, null_space,
                       quotient_norm)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def random_vector(rng: random.Random, field, dim: int, spread: int = 3) -> tuple:
    if field.is_rational:
        return tuple(field(rng.randint(-spread, spread)) for _ in range(dim))
    return tuple(field(rng.randint(-spread, spread), rng.randint(-spread, spread)) for _ in range(dim))


def check_scenario(sc, samples: int = 20, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    s = sc.space
    F = s.field
    out = []
    vecs = [random_vector(rng, F, s.dim) for _ in range(samples)]
    scalars = [random_vector(rng, F, 1)[0] for _ in range(samples)]
    norms = [evaluate(s, v) for v in vecs]

    ok = all(evaluate(s, tuple(c * x for x in v)) == abs(c) * n for c, v, n in zip(scalars, vecs, norms))
    out.append(CheckResult("absolute homogeneity", ok))
    ok = all(evaluate(s, tuple(x + y for x, y in zip(u, v))) <= nu + nv
             for u, v, nu, nv in zip(vecs, vecs[1:], norms, norms[1:]))
    out.append(CheckResult("triangle inequality", ok))

    null = null_space(s)
    ok = all(evaluate(s, b).is_zero() for b in null.basis)
    ok = ok and all((n.is_zero()) == null.contains(v) for v, n in zip(vecs, norms))
    out.append(CheckResult("null space = zero set of the semi-norm", ok, f"dim {null.dim}"))

    bd = bounded_dual(s)
    out.append(CheckResult("bounded dual = annihilator(null space)", bd == annihilator(null)))
    out.append(CheckResult("double annihilator", annihilator(annihilator(null)) == null))
    out.append(CheckResult("null rational iff bounded dual rational", is_rational(null) == is_rational(bd)))

    if s.is_primal:
        ok = True
        for v, n in zip(vecs, norms):
            val, phi = duality_certificate(s, v)
            pairing = sum((a * b for a, b in zip(phi, v)), F.zero)
            ok = ok and val == n and pairing == n and bd.contains(phi)
            if s.presentation.lift is None:
                ok = ok and all(abs(x) <= 1 for x in phi)
        out.append(CheckResult("duality certificate", ok))

    try:
        q = quotient_norm(s, sc.lattice())
    except IrrationalNullSpace:
        out.append(CheckResult("quotient isometry", True, "skipped: irrational null space"))
    else:
        ok = all(evaluate(q.quotient, q.project(v)) == n for v, n in zip(vecs, norms))
        out.append(CheckResult("quotient isometry", ok))
    return out
