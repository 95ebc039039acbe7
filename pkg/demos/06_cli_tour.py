"""A tour of the command line interface, driven in-process.

Run from the repository root:  python3 demos/06_cli_tour.py
"""

import tempfile
from pathlib import Path

from invcoh.cli import main

SCRIPT = """source: S
alpha 1 @ ε
twist (X1^-1, X1) @ ε
alphahat 1 @ ε
"""

MODEL = """builtin: graded-line
assign X1 = 1
unit X1 = 0
"""


def run(*argv):
    print("$ invcoh", " ".join(argv))
    code = main(list(argv))
    print(f"  (exit {code})\n")


with tempfile.TemporaryDirectory() as d:
    script = Path(d) / "trace.script"
    script.write_text(SCRIPT)
    model = Path(d) / "line.model"
    model.write_text(MODEL)

    run("normalize", "(X2^-1 * (X1 * X2))", "--gens", "2")
    run("eval", str(script))
    run("kl", str(script), "--json")
    run("sign", "tau", "--a", "1,1", "--b", "1,0")
    run("cohomology", "Z/2 x Z/2", "Z/2", "3", "--em")
    run("classify", "Z/2", "Z/2", "--json")
    run("model-check", "--model", str(model))
    run("model-eval", str(script), "--model", str(model))
