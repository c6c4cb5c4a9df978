#!/usr/bin/env python3
"""Region coverage of each module's core operations under the property suites.

Needs cargo-llvm-cov and rustfilt on PATH. Exits non-zero if any module is below the
threshold. Region coverage is used because branch coverage needs a nightly toolchain.
"""

import json
import re
import subprocess
import sys
import tempfile
from pathlib import Path

THRESHOLD = 95.0

CORE = {
    "ff": [
        r"<frobpow::ff::Field>::(add|sub|mul|neg|inv|div|pow|root_of_unity|multiplicative_order)$",
        r"lucas::binom_mod_p$",
        r"linalg::sparse_nullspace$",
        r"linalg::rank_of_sparse$",
    ],
    "poly": [
        r"Polynomial>::checked_(add|sub|mul)$",
        r"MonomialOrder>::cmp$",
        r"Monomial>::(mul|div|divides)$",
        r"Polynomial>::(leading_term|divide|substitute_linear|reduce_mod_frobenius|pow)$",
    ],
    "group": [
        r"GroupElement>::(mul|inverse|act|determinant)$",
        r"group::build_group$",
        r"group::enumerate_capped$",
    ],
    "invariants": [
        r"invariants::basic_invariants$",
        r"invariants::h_generators$",
        r"BasicInvariants>::expand(_truncated)?$",
    ],
    "groebner": [
        r"groebner::subduct$",
        r"groebner::in_ideal_by_(division|expansion)$",
    ],
    "qseries": [
        r"TruncatedSeries>::(add|sub|mul|pow|shift|mul_one_minus|div_one_minus)$",
        r"RationalExpr>::(expand|times|pow)$",
        r"qseries::(hilbert_main_fp|hilbert_stabilizer_fq|qt_binomial_poly|gaussian_binomial)$",
    ],
}


def main() -> int:
    root = Path(__file__).resolve().parent.parent
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "cov.json"
        subprocess.run(
            ["cargo", "llvm-cov", "-p", "frobpow", "--test", "properties", "--json", "--output-path", str(out)],
            cwd=root,
            check=True,
        )
        data = json.loads(out.read_text())
    functions = data["data"][0]["functions"]
    names = subprocess.run(
        ["rustfilt"], input="\n".join(f["name"] for f in functions), capture_output=True, text=True, check=True
    ).stdout.split("\n")
    src = str(root / "crates" / "core" / "src")
    rows = []
    for f, name in zip(functions, names):
        if f["filenames"][0].startswith(src):
            code = [r for r in f["regions"] if r[7] == 0]
            rows.append((name, sum(1 for r in code if r[4] > 0), len(code)))

    ok = True
    for module, patterns in CORE.items():
        hit = total = 0
        missed = []
        for pattern in patterns:
            for name, h, t in rows:
                if re.search(pattern, name):
                    hit += h
                    total += t
                    if h < t:
                        missed.append(f"{name} {h}/{t}")
        pct = 100.0 * hit / max(total, 1)
        ok &= pct >= THRESHOLD
        print(f"{module:11} {hit:4}/{total:<4} {pct:5.1f}%  {'; '.join(missed)}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
