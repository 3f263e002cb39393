"""Report payloads for the command-line front end.

Each ``*_report`` returns a plain dict envelope::

    {"command", "spec", "results", "verdict", "toolVersion", "notes"}

with rationals rendered as canonical ``"p/q"`` strings so that the JSON
form is stable byte for byte.
"""

from __future__ import annotations

import json
import random
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

from . import __version__
from . import chaos, conjugacy, negative, spectral
from . import operators as ops
from .operators import OperatorSpec
from .sampling import random_convseq
from .scalar import Scalar, format_rational
from .sequences import (FinSeq, IndexBase, basis_vector, convseq_to_json, finseq_to_json,
                        sup_norm, sup_norm_conv)

PASS, FAIL, INFO = "PASS", "FAIL", "INFO"


def q(value) -> str:
    return format_rational(value)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def envelope(command: str, spec: dict, results: dict, verdict: str,
             notes: Optional[Iterable[str]] = None) -> dict:
    return {"command": command, "spec": spec, "results": results, "verdict": verdict,
            "toolVersion": __version__, "notes": list(notes or [])}


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


# -- norms ------------------------------------------------------------------------

def norms_report(spec: OperatorSpec, n_max: int = 10, horizon: int = 200,
                 witness_m: int = 3, approx: bool = False) -> dict:
    rows = []
    ok = True
    for n in range(1, n_max + 1):
        closed = ops.opnorm_Bn(spec, n)
        brute = spectral.opnorm_bruteforce(spec, "B", n, horizon)
        row = {"n": n, "B_norm2_closed": q(closed.squared_exact),
               "B_norm2_oracle": q(brute), "B_match": closed.squared_exact == brute,
               "B_exponent": closed.exponent}
        ok &= row["B_match"]
        if spec.variant.bounded:
            a_closed = ops.opnorm_An_bounded(spec, n).squared_exact
            a_brute = spectral.opnorm_bruteforce(spec, "A", n, horizon)
            row.update(A_norm2_closed=q(a_closed), A_norm2_oracle=q(a_brute),
                       A_match=a_closed == a_brute)
            ok &= row["A_match"]
        else:
            row["quasinilpotence_exponent"] = q(mpq(closed.exponent, n))
            if spec.base is IndexBase.ONE:
                for m in range(1, witness_m + 1):
                    wit = ops.unboundedness_witness(spec, n, m)
                    direct = ops.unboundedness_witness_direct(spec, n, m)
                    row[f"witness_m{m}_norm2"] = q(wit.squared_exact)
                    row[f"witness_m{m}_match"] = wit.squared_exact == direct
                    ok &= wit.squared_exact == direct
        if approx:
            row["approx_B_logmag"] = closed.logmag
        rows.append(row)
    results = {"rows": rows, "oracle_horizon": horizon}
    return envelope("norms", spec.to_json(), results, _verdict(ok))


# -- chaos ------------------------------------------------------------------------

def default_targets(base: IndexBase) -> list[FinSeq]:
    b = int(base)
    return [basis_vector(base, b), FinSeq.from_list(base, [1, 2])]


def chaos_report(spec: OperatorSpec, targets: Sequence[FinSeq], tolerance, power: int = 1,
                 period: Optional[int] = None, samples: int = 20, n_max: int = 20,
                 seed: int = 0, K: int = 500, approx: bool = False) -> dict:
    tol2 = mpq(tolerance) ** 2
    scc = chaos.verify_scc(spec, samples, n_max, seed=seed, power=power)
    scc_rows = [{"sample": i, "right_inverse": s.right_inverse_ok,
                 "alpha2": q(s.fit.alpha2) if s.fit else None,
                 "c2": q(s.fit.c2) if s.fit else None}
                for i, s in enumerate(scc.samples)]
    ok = scc.passed
    rows = []
    for i, z in enumerate(targets):
        pp = chaos.periodic_density_demo(spec, z, tol2, K, power)
        member, res = chaos.per_N_membership(spec, pp.seq, pp.period, K, power)
        row = {"target": i, "period": pp.period, "tail_norm2": q(pp.tail_norm2),
               "within_tolerance": pp.tail_norm2 <= tol2, "periodic_residual2": q(res),
               "decay_certificate": pp.seq.check_decay(), "verified_up_to": K}
        ok &= member and row["within_tolerance"] and row["decay_certificate"]
        seed_vec = basis_vector(spec.base, int(spec.base) + 1)
        m = max(1, -(-seed_vec.support_length // power))
        visit = chaos.orbit_visit(spec, seed_vec, z, m, power)
        row.update(visit_m=m, visit_residual2=q(visit.residual2))
        ok &= visit.residual2 == 0
        if period is not None:
            explicit = chaos.build_periodic_point(spec, z, period, K, power)
            _, eres = chaos.per_N_membership(spec, explicit.seq, period, K, power)
            row["explicit_period_residual2"] = q(eres)
            ok &= eres == 0
        if approx:
            row["approx_tail_norm"] = float(pp.tail_norm2) ** 0.5
        rows.append(row)
    sched = chaos.hypercyclic_schedule(spec, targets, tol2, power)
    ok &= sched.passed
    results = {
        "rows": rows,
        "power": power,
        "tolerance2": q(tol2),
        "targets": [finseq_to_json(z) for z in targets],
        "scc": {"pass": scc.passed, "right_inverse_pass": scc.right_inverse_pass,
                "n_max": n_max, "samples": scc_rows, "assumed": list(scc.assumed)},
        "schedule": {"times": sched.times, "residuals2": [q(r) for r in sched.residuals2],
                     "pass": sched.passed, "witness": sched.is_witness},
    }
    return envelope("chaos", spec.to_json(), results, _verdict(ok))


# -- spectrum ------------------------------------------------------------------------

MULTIPLICITY_NOTE = ("the unbounded conjugated operator's eigenvalues are stated with "
                     "'geometric multiplicity n' next to dim ker = 1; multiplicity 1 is used")


def spectrum_report(spec: OperatorSpec, grid: Sequence[Scalar], K: int = 500,
                    field: spectral.Field = spectral.Field.COMPLEX) -> dict:
    rows = []
    ok = True
    for lam in grid:
        v = spectral.classify_spectrum(spec, lam, field)
        row = {"lambda": str(lam), "class": v.cls.value if v.cls else None,
               "eigenvalue": v.eigenvalue, "multiplicity": v.multiplicity}
        if v.kernel_basis is not None:
            res = spectral.eigen_residual(spec, lam, v.kernel_basis, K)
            row["residual2"] = q(res)
            ok &= res == 0
        rows.append(row)
    notes = []
    if spec.variant is ops.Variant.UNBOUNDED_HAT:
        notes.append(MULTIPLICITY_NOTE)
    if field is spectral.Field.REAL:
        notes.append("real field: only eigenvalue membership is reported")
    if not ok:
        verdict = FAIL
    elif field is spectral.Field.REAL:
        verdict = INFO
    else:
        verdict = PASS
    results = {"rows": rows, "K": K, "field": field.value}
    return envelope("spectrum", spec.to_json(), results, verdict, notes)


# -- conjugacy -----------------------------------------------------------------------

def conjugacy_report(w, n_max: int = 5, samples: int = 20, seed: int = 0) -> dict:
    rng = random.Random(seed)
    w = Scalar.parse(w) if isinstance(w, str) else w
    complex_ = not w.is_real
    xs = [random_convseq(rng, complex_=complex_) for _ in range(samples)]
    rows = []
    ok = True
    summary = {}
    for bounded in (True, False):
        spec = OperatorSpec.hat(bounded, w)
        equal = 0
        for i, x in enumerate(xs):
            for n in range(1, n_max + 1):
                wit = conjugacy.conjugation_oracle(spec, n, x)
                limit_ok = wit.closed_form.limit == conjugacy.hat_power_limit_formula(spec, n, x)
                rows.append({"variant": spec.variant.value, "sample": i, "n": n,
                             "equal": wit.equal, "limit": str(wit.closed_form.limit),
                             "limit_formula": limit_ok})
                ok &= wit.equal and limit_ok
                equal += wit.equal
        summary[spec.variant.value] = {"checked": samples * n_max, "equal": equal}
    roundtrip = all(conjugacy.J_inv(conjugacy.J(x)) == x for x in xs)
    inverse_roundtrip = all(conjugacy.J(conjugacy.J_inv(conjugacy.J(x))) == conjugacy.J(x) for x in xs)
    bound_ok = all(conjugacy.J_norm_ratio_ok(x) for x in xs)
    stretched = sum(sup_norm(conjugacy.J(x)).squared > sup_norm_conv(x).squared for x in xs)
    ok &= roundtrip and inverse_roundtrip and bound_ok
    results = {"rows": rows, "summary": summary, "J_roundtrip": roundtrip,
               "J_inverse_roundtrip": inverse_roundtrip, "J_norm_bound": bound_ok,
               "J_stretched_samples": stretched,
               "samples": [convseq_to_json(x) for x in xs]}
    spec_echo = {"variants": ["bounded-hat", "unbounded-hat"], "space": "c", "base": "one",
                 "w": str(w)}
    return envelope("conjugacy", spec_echo, results, _verdict(ok))


# -- negative ------------------------------------------------------------------------

def negative_report(variant: negative.ExtensionVariant, w, samples: int = 100, seed: int = 0,
                    plant: bool = False, K: int = 60) -> dict:
    rep = negative.obstruction_report(variant, w, samples, seed, plant, K)
    rejected = []
    for x, check in rep.rejected:
        ev = check.evidence[:5]
        rejected.append({"input": convseq_to_json(x), "verdict": check.verdict.value,
                         "reason": check.reason,
                         "growth": [{"k": k, "weighted2": q(v)} for k, v in ev]})
    ok = rep.passed
    if plant:
        ok &= any(r["verdict"] == "NOT_IN_DOMAIN" for r in rejected)
    results = {"obstruction": rep.obstruction.value, "conclusion": rep.verdict,
               "evidence_count": len(rep.evidence),
               "evidence_all_zero": rep.passed,
               "rows": [{"sample": i, "checked_value": str(v)} for i, (_, v) in enumerate(rep.evidence)],
               "rejected": rejected}
    spec_echo = {"variant": variant.value, "space": "c", "base": "one", "w": str(rep.w)}
    notes = [f"rejected input {i}: {r['verdict']} (limit {r['input']['limit']}): {r['reason']}"
             for i, r in enumerate(rejected)]
    return envelope("negative", spec_echo, results, _verdict(ok), notes)
