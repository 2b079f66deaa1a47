"""Named verification suites and their dispatcher."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

from .catalog import TAGS, build_scheme, lambda_label, lambda_param, morphism_suite
from .cleft import (
    coinvariant_generator_suite,
    cleaving_suite,
    presentation_suite,
    coinvariant_presentation_suite,
)
from .hopf import check_hopf_axioms
from .report import VerificationReport
from .torsors import cleft_point_suite, torsor_suite
from .unitgroup import determinant_suite, unit_maps_suite, verify_comultiplication

SUITES = ("hopf-axioms", "prop-3.1", "cor-3.2", "thm-3.3", "prop-3.10", "cor-3.11",
          "notation-4.1", "prop-4.2", "prop-4.3", "thm-4.4")
HEAVY = {"notation-4.1", "prop-4.2", "prop-4.3", "thm-4.4"}
DEEP_PRIME = 5


def normalize_lambda(mode: str, p: int) -> str:
    """'generic', 'zero', or a residue in 1..p-1 as a string."""
    if mode in ("generic", "zero"):
        return mode
    k = int(mode) % p
    return "zero" if k == 0 else str(k)


def _hopf_axioms(lam, report):
    for tag in TAGS:
        check_hopf_axioms(build_scheme(tag, lam), report, ref=f"structure maps of {tag}")
    morphism_suite(lam, report)


def run_suite(name: str, p: int, mode: str = "generic", seed: int = 0,
              deep: bool = False) -> VerificationReport:
    mode = normalize_lambda(mode, p)
    lam = lambda_param(p, mode)
    report = VerificationReport(name, p, lambda_label(lam), seed)
    if name in HEAVY and p >= DEEP_PRIME and not deep:
        report.skip(f"{name} at p={p}", "run gating", "needs --deep at this prime")
        return report
    if name == "hopf-axioms":
        _hopf_axioms(lam, report)
    elif name == "prop-3.1":
        verify_comultiplication(lam, deep=deep, seed=seed, report=report)
    elif name == "cor-3.2":
        determinant_suite(lam, report)
    elif name == "thm-3.3":
        unit_maps_suite(lam, report)
    elif name == "prop-3.10":
        torsor_suite(p, mode, report)
    elif name == "cor-3.11":
        cleft_point_suite(p, report)
    elif name == "notation-4.1":
        cleaving_suite(lam, seed=seed, report=report)
    elif name == "prop-4.2":
        coinvariant_generator_suite(lam, report)
    elif name == "prop-4.3":
        presentation_suite(lam, report)
    elif name == "thm-4.4":
        coinvariant_presentation_suite(lam, seed=seed, report=report)
    else:
        raise ValueError(f"unknown suite {name!r}")
    return report


def clear_caches() -> None:
    """Forget every memoized algebra, scheme and derived structure."""
    from . import algebra, catalog, cleft, torsors, unitgroup
    for cache in (algebra._BASE, algebra._TENSORS, catalog._CACHE, cleft._CLEFT, cleft._PRES,
                  torsors._TORSORS, unitgroup._UNIT_CACHE):
        cache.clear()


def _run_args(args):
    return run_suite(*args)


def worker_count(default: int | None = None) -> int:
    n = default or os.cpu_count() or 1
    cap = os.environ.get("VERIFY_THREADS")
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def run_all(p: int, mode: str = "generic", seed: int = 0, deep: bool = False,
            workers: int | None = None) -> VerificationReport:
    """Every suite, with check names prefixed by their suite."""
    workers = worker_count(workers or len(SUITES))
    jobs = [(name, p, mode, seed, deep) for name in SUITES]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_args, jobs))
    else:
        parts = [_run_args(j) for j in jobs]
    out = VerificationReport("all", p, parts[0].lambda_mode, seed)
    for part in parts:
        for c in part.checks:
            c.name = f"{part.suite}: {c.name}"
        out.extend(part)
    return out


def run(name: str, p: int, mode: str = "generic", seed: int = 0, deep: bool = False,
        workers: int | None = None) -> VerificationReport:
    if name == "all":
        return run_all(p, mode, seed, deep, workers)
    return run_suite(name, p, mode, seed, deep)
