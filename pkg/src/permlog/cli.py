"""Command-line surface: cogwheel, spin, and bch reports with deterministic export.

JSON documents carry fixed field order and fixed float formatting (17
significant digits), so identical invocations produce byte-identical output.
Complex numbers serialize as [re, im] pairs and matrices as row-major nested
arrays. CSV export exists only for flat data (energy levels and perturbation
sweeps). Exit codes: 0 all verifications passed, 1 some verification failed,
2 usage error. The PERMLOG_TOL environment variable overrides the default
equality tolerance; --tol overrides both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .bch import (
    COUPLING_FAMILIES,
    PerturbationConfig,
    PreconditionViolation,
    bch_chain,
    coupling_variant_check,
    perturb_coupling,
    superposition_leakage,
)
from .cogwheel import (
    build_standard_form,
    cogwheel_energies,
    cogwheel_hamiltonian,
    diagonalizer,
    polynomial_coefficients,
    verify_power_identity,
)
from .dynamics import (
    WordParseError,
    evolution_permutation,
    hamiltonian_from_permutation,
    orbit_decomposition,
    parse_word,
    polynomial_matrix,
    spectrum,
    uniform_polynomial_form,
)
from .linalg import (
    DEFAULT_EQ_TOL,
    DEFAULT_UNITARITY_TOL,
    dagger,
    expm,
    is_permutation_matrix,
    max_abs_diff,
)
from .spins import SPIN_CAP, SpinConfiguration, four_spin_state_label, number_down, number_up, spinflip

SCHEMA_VERSION = 1
TOL_ENV_VAR = "PERMLOG_TOL"


# ---------------------------------------------------------------------------
# deterministic JSON emission


def _float_repr(x: float) -> str:
    if not np.isfinite(x):
        raise ValueError("refusing to serialize a non-finite number")
    return format(float(x), ".17g")


def _emit_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        rows = [f'{pad}  {json.dumps(key)}: {_emit_json(val, indent + 1)}' for key, val in value.items()]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            return "[]"
        if all(isinstance(x, (bool, int, float, np.integer, np.floating)) for x in items):
            return "[" + ", ".join(_emit_json(x) for x in items) + "]"
        rows = [f"{pad}  {_emit_json(x, indent + 1)}" for x in items]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _float_repr(value)
    if isinstance(value, (complex, np.complexfloating)):
        return "[" + _float_repr(value.real) + ", " + _float_repr(value.imag) + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _complex_pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _matrix_json(m) -> list[list[list[float]]]:
    m = np.asarray(m, dtype=complex)
    return [[_complex_pair(z) for z in row] for row in m]


def _vector_json(v) -> list[float]:
    return [float(x) for x in np.asarray(v, dtype=float)]


# ---------------------------------------------------------------------------
# pretty rendering


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:+.6g}{z.imag:+.6g}i"

def _fmt_matrix(m, label: str) -> list[str]:
    m = np.asarray(m, dtype=complex)
    lines = [f"{label} ({m.shape[0]}x{m.shape[1]}):"]
    for row in m:
        lines.append("  " + "  ".join(f"{_fmt_complex(z):>22s}" for z in row))
    return lines


def _verification_lines(verifications) -> list[str]:
    lines = ["verifications:"]
    for v in verifications:
        mark = "ok " if v["passed"] else "FAIL"
        detail = ""
        if v.get("max_error") is not None:
            detail = f"  (max_error={v['max_error']:.3e}, tolerance={v['tolerance']:.1e})"
        lines.append(f"  [{mark}] {v['name']}{detail}")
    failed = [v["name"] for v in verifications if not v["passed"]]
    if failed:
        lines.append("FAILED: " + ", ".join(failed))
    return lines


def _check(name: str, error: float, tolerance: float) -> dict:
    return {
        "name": name,
        "passed": bool(error <= tolerance),
        "max_error": float(error),
        "tolerance": float(tolerance),
    }


def _check_bool(name: str, passed: bool) -> dict:
    return {"name": name, "passed": bool(passed), "max_error": None, "tolerance": None}


# ---------------------------------------------------------------------------
# commands


def _cmd_cogwheel(args, tol: float):
    n = args.n
    if n < 1:
        raise ValueError("--n must be a positive integer")
    t = args.t
    if not t > 0:
        raise ValueError("--t must be positive")
    phases = None
    if args.phases is not None:
        phases = [float(p) for p in args.phases.split(",")]
        if len(phases) != n:
            raise ValueError(f"--phases needs exactly {n} comma-separated values")
    zero_phases = phases is None or all(p == 0.0 for p in phases)

    u = build_standard_form(n, phases)
    levels = cogwheel_energies(n, t, phases)
    verifications = [
        _check("standard_form_unitary", max_abs_diff(u @ dagger(u), np.eye(n)), DEFAULT_UNITARITY_TOL),
        _check_bool("standard_form_is_permutation", is_permutation_matrix(u, tol)),
        _check_bool("power_identity", verify_power_identity(n, phases, tol)),
    ]
    results = {
        "standard_form": _matrix_json(u),
        "energies": _vector_json(levels.energies),
    }
    h = coeffs = None
    if zero_phases:
        d = diagonalizer(n)
        h = cogwheel_hamiltonian(n, t)
        coeffs = polynomial_coefficients(n, t)
        lam = np.diag(np.exp(-1j * levels.energies * t))
        reconstructed = sum(
            coeffs[k] * np.linalg.matrix_power(u, k) for k in range(n)
        )
        results["diagonalizer"] = _matrix_json(d)
        results["hamiltonian"] = _matrix_json(h)
        results["polynomial_coefficients"] = [_complex_pair(c) for c in coeffs]
        verifications += [
            _check("diagonalizer_unitary", max_abs_diff(d @ dagger(d), np.eye(n)), DEFAULT_UNITARITY_TOL),
            _check("diagonalization", max_abs_diff(dagger(d) @ u @ d, lam), DEFAULT_UNITARITY_TOL),
            _check("hamiltonian_self_adjoint", max_abs_diff(h, dagger(h)), DEFAULT_UNITARITY_TOL),
            _check("round_trip", max_abs_diff(expm(-1j * h * t), u), tol),
            _check("coefficients_reconstruct", max_abs_diff(reconstructed, h), tol),
            _check("coefficients_zero_sum", abs(complex(coeffs.sum())), DEFAULT_UNITARITY_TOL),
        ]

    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "cogwheel",
        "inputs": {
            "n": n,
            "t": float(t),
            "phases": _vector_json(phases if phases is not None else [0.0] * n),
            "tolerance": float(tol),
        },
        "results": results,
        "verifications": verifications,
    }

    csv_lines = ["level,energy"]
    csv_lines += [f"{i},{_float_repr(e)}" for i, e in enumerate(levels.energies)]

    pretty = [f"cogwheel: n={n}, t={_float_repr(t)}"]
    pretty += _fmt_matrix(u, "standard form U")
    pretty.append("energies: " + ", ".join(_float_repr(e) for e in levels.energies))
    if zero_phases:
        pretty += _fmt_matrix(h, "hamiltonian H")
        pretty.append("polynomial coefficients: " + ", ".join(_fmt_complex(c) for c in coeffs))
    pretty += _verification_lines(verifications)
    return payload, "\n".join(csv_lines) + "\n", "\n".join(pretty) + "\n"


def _orbit_entry(cycle, n_spins: int) -> dict:
    states = [str(SpinConfiguration(n_spins, x)) for x in cycle]
    entry = {"length": len(cycle), "indices": list(cycle), "states": states}
    if n_spins == 4:
        entry["labels"] = [four_spin_state_label(SpinConfiguration(4, x)) for x in cycle]
    return entry


def _cmd_spin(args, tol: float):
    n = args.n
    if not 2 <= n <= SPIN_CAP:
        raise ValueError(f"--n must be in 2..{SPIN_CAP}")
    t = args.t
    if not t > 0:
        raise ValueError("--t must be positive")
    word = parse_word(args.word, n)
    perm = evolution_permutation(word)
    orbits = orbit_decomposition(perm)
    report = hamiltonian_from_permutation(perm, t)
    coeffs = uniform_polynomial_form(perm, t)
    spec = spectrum(perm, t)
    u = perm.matrix()
    h = report.matrix

    n_up = number_up(n).astype(complex)
    n_down = number_down(n).astype(complex)
    flip = spinflip(n).matrix()
    period = len(coeffs)
    verifications = [
        _check("round_trip", max_abs_diff(expm(-1j * h * t), u), tol),
        _check("commutes_number_up", max_abs_diff(h @ n_up, n_up @ h), DEFAULT_UNITARITY_TOL),
        _check("commutes_number_down", max_abs_diff(h @ n_down, n_down @ h), DEFAULT_UNITARITY_TOL),
        _check("commutes_spinflip", max_abs_diff(h @ flip, flip @ h), DEFAULT_UNITARITY_TOL),
        _check("polynomial_matches_blocks", max_abs_diff(polynomial_matrix(perm, coeffs), h), tol),
        _check_bool("power_lcm_identity", (perm**period).is_identity()),
        _check_bool("multiplicities_total", spec.total_multiplicity == perm.size),
    ]

    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "spin",
        "inputs": {"n": n, "word": str(word), "t": float(t), "tolerance": float(tol)},
        "results": {
            "dimension": perm.size,
            "orbit_lengths": list(orbits.lengths),
            "orbits": [_orbit_entry(c, n) for c in orbits.cycles],
            "hamiltonian": _matrix_json(h),
            "polynomial_period": period,
            "polynomial_coefficients": [_complex_pair(c) for c in coeffs],
            "spectrum": {
                "energies": _vector_json(spec.distinct_energies),
                "multiplicities": list(spec.multiplicities),
                "contributing_cycles": [list(p) for p in spec.block_provenance],
            },
        },
        "verifications": verifications,
    }

    csv_lines = ["energy,multiplicity"]
    csv_lines += [
        f"{_float_repr(e)},{m}" for e, m in zip(spec.distinct_energies, spec.multiplicities)
    ]

    pretty = [f"spin chain: n={n}, word={word}, t={_float_repr(t)}", "orbits:"]
    for c in orbits.cycles:
        states = " -> ".join(str(SpinConfiguration(n, x)) for x in c)
        if n == 4:
            labels = ",".join(str(four_spin_state_label(SpinConfiguration(4, x))) for x in c)
            pretty.append(f"  length {len(c)}: {states}  (labels {labels})")
        else:
            pretty.append(f"  length {len(c)}: {states}")
    pretty += _fmt_matrix(h, "hamiltonian H")
    pretty.append(f"polynomial period: {period}")
    pretty.append(
        "polynomial coefficients: " + ", ".join(_fmt_complex(c) for c in coeffs[: min(period, 16)])
        + (" ..." if period > 16 else "")
    )
    pretty.append("spectrum:")
    for e, m in zip(spec.distinct_energies, spec.multiplicities):
        pretty.append(f"  energy {_float_repr(e)}  multiplicity {m}")
    pretty += _verification_lines(verifications)
    return payload, "\n".join(csv_lines) + "\n", "\n".join(pretty) + "\n"


def _parse_sweep(spec_text: str) -> np.ndarray:
    parts = spec_text.split(":")
    if len(parts) != 3:
        raise ValueError("--epsilon-sweep expects start:stop:steps")
    start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 1:
        raise ValueError("--epsilon-sweep needs at least one step")
    return np.linspace(start, stop, steps)


def _cmd_bch(args, tol: float):
    n = args.n
    if not 2 <= n <= SPIN_CAP:
        raise ValueError(f"--n must be in 2..{SPIN_CAP}")
    t = args.t
    if not t > 0:
        raise ValueError("--t must be positive")
    word = parse_word(args.word, n)

    verifications = []
    results: dict = {"word": str(word)}
    try:
        chain = bch_chain(word, t)
    except PreconditionViolation as exc:
        results["chain_error"] = str(exc)
        verifications.append(_check_bool("chain_preconditions", False))
    else:
        results["max_deviation"] = float(chain.max_deviation)
        results["form_deviations"] = {
            label: float(dev) for label, dev in chain.deviations().items()
        }
        for label, dev in chain.deviations().items():
            verifications.append(_check(f"form_{label}", dev, tol))
        variants = []
        for family in COUPLING_FAMILIES:
            for k in range(-args.k_range, args.k_range + 1):
                passed = coupling_variant_check(word, k, family, tol)
                variants.append({"k": k, "family": family, "passed": passed})
                verifications.append(_check_bool(f"coupling_{family}_k{k:+d}", passed))
        results["coupling_variants"] = variants

    csv_text = None
    if args.epsilon_sweep is not None:
        eps_values = _parse_sweep(args.epsilon_sweep)
        sweep = []
        for eps in eps_values:
            leak = superposition_leakage(perturb_coupling(word, PerturbationConfig(epsilon=float(eps))))
            sweep.append([float(eps), float(leak)])
        results["sweep"] = sweep
        csv_lines = ["epsilon,leakage"]
        csv_lines += [f"{_float_repr(e)},{_float_repr(l)}" for e, l in sweep]
        csv_text = "\n".join(csv_lines) + "\n"
    if args.epsilon is not None:
        leak = superposition_leakage(
            perturb_coupling(word, PerturbationConfig(epsilon=float(args.epsilon)))
        )
        results["perturbation"] = {"epsilon": float(args.epsilon), "leakage": float(leak)}
        if args.epsilon == 0.0:
            verifications.append(_check("zero_coupling_leakage", leak, DEFAULT_UNITARITY_TOL))

    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "bch",
        "inputs": {"n": n, "word": str(word), "t": float(t), "tolerance": float(tol)},
        "results": results,
        "verifications": verifications,
    }

    pretty = [f"bch: n={n}, word={word}"]
    if "max_deviation" in results:
        pretty.append(f"all closed forms vs plain product: max deviation {results['max_deviation']:.3e}")
        for label, dev in results["form_deviations"].items():
            pretty.append(f"  {label}: {dev:.3e}")
        agree = sum(1 for v in results["coupling_variants"] if v["passed"])
        pretty.append(f"coupling variants passed: {agree}/{len(results['coupling_variants'])}")
    else:
        pretty.append(f"chain not evaluated: {results['chain_error']}")
    if "perturbation" in results:
        p = results["perturbation"]
        pretty.append(f"epsilon {_float_repr(p['epsilon'])}: leakage {_float_repr(p['leakage'])}")
    if "sweep" in results:
        pretty.append("epsilon sweep:")
        for e, l in results["sweep"]:
            pretty.append(f"  {_float_repr(e)}  {_float_repr(l)}")
    pretty += _verification_lines(verifications)
    return payload, csv_text, "\n".join(pretty) + "\n"


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permlog",
        description="Exact permutation dynamics: cogwheel logarithms, spin-exchange words, "
        "and terminating exponential-product identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--t", type=float, default=1.0, help="time step T (default 1.0)")
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
        p.add_argument("--output", default=None, help="write to this path instead of stdout")
        p.add_argument("--tol", type=float, default=None,
                       help=f"equality tolerance (default {DEFAULT_EQ_TOL}, or ${TOL_ENV_VAR})")

    p_cog = sub.add_parser("cogwheel", help="standard-form operator, energies, Hamiltonian")
    p_cog.add_argument("--n", type=int, required=True, help="number of states")
    p_cog.add_argument("--phases", default=None, help="comma-separated phases (default all zero)")
    add_common(p_cog)

    p_spin = sub.add_parser("spin", help="exchange-word dynamics on N spins")
    p_spin.add_argument("--n", type=int, required=True, help="number of spins (2..12)")
    p_spin.add_argument("--word", required=True, help='e.g. "P23 P12 P34"')
    add_common(p_spin)

    p_bch = sub.add_parser("bch", help="closed exponential forms and perturbation probe")
    p_bch.add_argument("--n", type=int, required=True, help="number of spins (2..12)")
    p_bch.add_argument("--word", required=True, help='e.g. "P23 P12 P34"')
    p_bch.add_argument("--epsilon", type=float, default=None, help="single coupling offset")
    p_bch.add_argument("--epsilon-sweep", dest="epsilon_sweep", default=None,
                       help="start:stop:steps leakage sweep")
    p_bch.add_argument("--k-range", dest="k_range", type=int, default=2,
                       help="check coupling variants for |k| up to this (default 2)")
    add_common(p_bch)
    return parser


_HANDLERS = {"cogwheel": _cmd_cogwheel, "spin": _cmd_spin, "bch": _cmd_bch}


def _resolve_tol(args) -> float:
    if args.tol is not None:
        tol = args.tol
    elif os.environ.get(TOL_ENV_VAR):
        tol = float(os.environ[TOL_ENV_VAR])
    else:
        tol = DEFAULT_EQ_TOL
    if not tol > 0:
        raise ValueError("tolerance must be strictly positive")
    return tol


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _resolve_tol(args)
        payload, csv_text, pretty_text = _HANDLERS[args.command](args, tol)
        if args.format == "json":
            rendered = _emit_json(payload) + "\n"
        elif args.format == "csv":
            if csv_text is None:
                raise ValueError("CSV export is only available for flat data (spectra and sweeps)")
            rendered = csv_text
        else:
            rendered = pretty_text
    except (WordParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0 if all(v["passed"] for v in payload["verifications"]) else 1


if __name__ == "__main__":
    raise SystemExit(main())
