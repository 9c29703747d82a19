"""Shared invocation table for CLI golden tests and regeneration.

Each case is (name, argv, expected exit code).  Goldens hold the exact
stdout bytes; scripts/make_goldens.py rewrites them from this table.
"""

CASES = [
    ("qe", ["qe", "exists n . m = 2*n & n >= 3"], 0),
    ("qe-text", ["qe", "exists n . m = 2*n & n >= 3", "--format", "text"], 0),
    ("sat", ["sat", "2*m === 1 mod 5 & m >= 4"], 0),
    ("sat-unsat", ["sat", "m >= 1 & m <= 0"], 0),
    ("extremum-sup", ["extremum", "m >= 1 & m <= 9", "--objective", "m"], 0),
    ("extremum-unbounded",
     ["extremum", "m >= 1", "--objective", "m", "--mode", "sup"], 0),
    ("ray", ["ray", "a = 2*b & b >= 1", "--vars", "a,b"], 0),
    ("ray-none", ["ray", "a <= 4 & b >= 0", "--vars", "a,b"], 0),
    ("hensel-lift",
     ["hensel-lift", "y^2 - (1 + t)", "1", "--precision", "8"], 0),
    ("hensel-decompose",
     ["hensel-decompose", "y^2 - (1 + t)", "--precision", "8"], 0),
    ("hensel-decompose-exact", ["hensel-decompose", "y^2 - 3*y + 2"], 0),
    ("polygon", ["polygon", "y^2 - x^3"], 0),
    ("polygon-series", ["polygon", "y^2 - t^3"], 0),
    ("puiseux", ["puiseux", "y^2 - x^3", "--order", "8"], 0),
    ("puiseux-node", ["puiseux", "y^2 - x^2 - x^3", "--order", "8"], 0),
    ("limits", ["limits", "y^2 - 2 - x"], 0),
    ("closure",
     ["closure", "v(y - (1+t)) >= 2*v(x) & v(x) >= 1", "-N", "8"], 0),
    ("closure-bounded", ["closure", "v(x1) <= 5 & v(y) >= 0", "-N", "8"], 0),
    ("shrink", ["shrink", "v(x2) = 2*v(x1) & v(x1) >= 1"], 0),
    ("member", ["member", "v(y - t) >= v(x1)", "0", "t"], 0),
    ("arc", ["arc", "v(y^2 - x^3) = inf"], 0),
    ("arc-wedge", ["arc", "v(y) >= 2*v(x) & v(x) >= 1"], 0),
    ("loja", ["loja", "y*(y - t)", "y^3"], 0),
    ("loja-text", ["loja", "y^2", "y^3", "--format=text"], 0),
    ("gform", ["gform", "3", "--check", "--samples", "25", "--seed", "7"], 0),
    ("parse", ["parse", "v(y - (1+t)) >= 2*v(x) & ac(x) = 1"], 0),
    ("parse-text", ["parse", "y^2 - (1+t)*x^3", "--format", "text"], 0),
    # domain errors exit 1
    ("err-lead", ["hensel-decompose", "t*y^2 + y"], 1),
    ("err-not-root", ["hensel-lift", "y^2 - (1 + t)", "2"], 1),
    ("err-double-root", ["hensel-lift", "y^2 - t^2", "0"], 1),
    ("err-shrink-y", ["shrink", "v(y) >= 1"], 1),
    # parse errors exit 2
    ("err-parse", ["parse", "v("], 2),
    ("err-parse-closure", ["closure", "v(y -", "-N", "4"], 2),
]
