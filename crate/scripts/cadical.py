#!/usr/bin/env python3
"""Solve a DIMACS CNF file with CaDiCaL (python-sat) and print the verdict
and model in SAT-competition format."""

import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: cadical.py <file.cnf>", file=sys.stderr)
        return 2
    cnf = CNF(from_file=sys.argv[1])
    with Solver(name="cadical195", bootstrap_with=cnf.clauses) as s:
        if s.solve():
            model = s.get_model() or []
            print("s SATISFIABLE")
            print("v " + " ".join(map(str, model)) + " 0")
            return 10
        print("s UNSATISFIABLE")
        return 20


if __name__ == "__main__":
    sys.exit(main())
