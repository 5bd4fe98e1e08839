#!/usr/bin/env python3
"""Solve a DIMACS file with CaDiCaL (python-sat) and answer in
SAT-competition format. Usage: pysat_solver.py FILE.cnf"""

import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__, file=sys.stderr)
        return 2
    cnf = CNF(from_file=sys.argv[1])
    with Solver(name="cadical195", bootstrap_with=cnf.clauses) as solver:
        if not solver.solve():
            print("s UNSATISFIABLE")
            return 20
        print("s SATISFIABLE")
        model = solver.get_model()
        for i in range(0, len(model), 20):
            print("v " + " ".join(map(str, model[i:i + 20])))
        print("v 0")
        return 10


if __name__ == "__main__":
    sys.exit(main())
