#!/usr/bin/env python3
# Copyright 2026 The Carpool Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact LP optimum of the coded min-cost problem, via scipy's HiGHS.

Builds the formulation from scratch (artificial endpoints, per-session
triple flows, per-pair broadcast counts y) without sharing code with the
C++ library. Prints the physical optimum.

  lp_oracle.py INSTANCE.json            print the optimum
  lp_oracle.py INSTANCE.json SOL.json   also require SOL's best_dual_bound
                                        <= optimum <= its expanded cost
"""

import json
import sys

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix


def solve(instance):
    n = len(instance["nodes"])
    cost = [node["cost"] for node in instance["nodes"]]
    adj = [set() for _ in range(n)]
    for a, b in instance["edges"]:
        adj[a].add(b)
        adj[b].add(a)
    sessions = instance["sessions"]
    for t, s in enumerate(sessions):
        src, dst = n + 2 * t, n + 2 * t + 1
        adj.append({s["source"]})
        adj.append({s["dest"]})
        adj[s["source"]].add(src)
        adj[s["dest"]].add(dst)
        cost += [0.0, 0.0]
    total = len(adj)

    triples = [(v, i, w) for i in range(total) for v in adj[i] for w in adj[i] if v != w]
    pairs = sorted({(i, min(v, w), max(v, w)) for v, i, w in triples})
    num_x = len(sessions) * len(triples)
    col_y = {p: num_x + k for k, p in enumerate(pairs)}
    num_vars = num_x + len(pairs)

    c = np.zeros(num_vars)
    for p, col in col_y.items():
        c[col] = cost[p[0]]

    def x_col(t, k):
        return t * len(triples) + k

    # sum_t x^t(v,i,w) <= y({v,w} at i)
    rows, cols, vals = [], [], []
    for k, (v, i, w) in enumerate(triples):
        for t in range(len(sessions)):
            rows.append(k); cols.append(x_col(t, k)); vals.append(1.0)
        rows.append(k); cols.append(col_y[(i, min(v, w), max(v, w))]); vals.append(-1.0)
    a_ub = coo_matrix((vals, (rows, cols)), shape=(len(triples), num_vars))
    b_ub = np.zeros(len(triples))

    # Conservation on every ordered adjacent pair (i, j) and session t:
    # out of (i, j) minus into (i, j) equals the supply.
    ordered = sorted({(v, i) for v, i, _ in triples} | {(i, w) for _, i, w in triples})
    pair_row = {p: r for r, p in enumerate(ordered)}
    rows, cols, vals = [], [], []
    b_eq = np.zeros(len(sessions) * len(ordered))
    for t, s in enumerate(sessions):
        base = t * len(ordered)
        for k, (v, i, w) in enumerate(triples):
            rows.append(base + pair_row[(v, i)]); cols.append(x_col(t, k)); vals.append(1.0)
            rows.append(base + pair_row[(i, w)]); cols.append(x_col(t, k)); vals.append(-1.0)
        src, dst = n + 2 * t, n + 2 * t + 1
        b_eq[base + pair_row[(src, s["source"])]] += s["rate"]
        b_eq[base + pair_row[(s["dest"], dst)]] -= s["rate"]
    a_eq = coo_matrix((vals, (rows, cols)), shape=(len(b_eq), num_vars))

    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=(0, None),
                  method="highs")
    if res.status != 0:
        raise SystemExit("LP failed: " + res.message)
    correction = sum(instance["nodes"][s["dest"]]["cost"] * s["rate"] for s in sessions)
    return res.fun, res.fun - correction


def main(argv):
    with open(argv[1]) as f:
        instance = json.load(f)
    expanded, physical = solve(instance)
    print("%.12g" % physical)
    if len(argv) > 2:
        with open(argv[2]) as f:
            sol = json.load(f)
        slack = 1e-7 * max(1.0, abs(expanded))
        if not sol["best_dual_bound"] <= expanded + slack:
            raise SystemExit("dual bound %.12g exceeds LP optimum %.12g"
                             % (sol["best_dual_bound"], expanded))
        if not expanded <= sol["expanded_cost"] + slack:
            raise SystemExit("solution cost %.12g below LP optimum %.12g"
                             % (sol["expanded_cost"], expanded))
        print("bracket ok: %.12g <= %.12g <= %.12g"
              % (sol["best_dual_bound"], expanded, sol["expanded_cost"]))


if __name__ == "__main__":
    main(sys.argv)
