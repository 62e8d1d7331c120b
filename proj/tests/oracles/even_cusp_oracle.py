#!/usr/bin/env python3
"""Hand-summed even-dimensional cusp torsion, written as JSON for the acceptance run.

value(m, b) = m/2 * sum over q with 2q < m-1 of (-1)^q b_q log(m-1-2q), summed in
high precision with mpmath so that it shares no code with the C++ side.
"""
import json
import random
import sys

import mpmath as mp

mp.mp.dps = 40


def even_at(m, b):
    total = mp.mpf(0)
    q = 0
    while 2 * q < m - 1:
        bq = b[q] if q < len(b) else 0
        total += (-1) ** q * bq * mp.log(m - 1 - 2 * q)
        q += 1
    return mp.mpf(m) / 2 * total


def main():
    cases = [
        {"m": 2, "b": [1, 1], "note": "link is a circle"},
        {"m": 4, "b": [1, 0, 0, 1], "note": "b0 = 1"},
    ]
    rng = random.Random(20240607)
    for _ in range(20):
        m = rng.choice([2, 4, 6, 8, 10])
        v = m - 1
        half = [rng.randint(0, 4) for _ in range((v + 1) // 2)]
        b = half + half[::-1]  # Poincare symmetric on the odd-dimensional link
        cases.append({"m": m, "b": b})
    for c in cases:
        c["value"] = float(even_at(c["m"], c["b"]))
    text = json.dumps({"cases": cases}, indent=1)
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w") as f:
            f.write(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    main()
