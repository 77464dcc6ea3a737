"""Writes market_fixture.csv: synthetic daily close and volume.

Returns follow a GARCH(1,1) process; log volume tracks the conditional
variance plus noise. Deterministic for a given seed.
"""
import csv
import datetime
import math
import random
import sys

def main(path="market_fixture.csv", rows=2500, seed=20240101):
    rng = random.Random(seed)
    omega, alpha, beta = 2e-6, 0.08, 0.9
    var = omega / (1 - alpha - beta)
    price = 100.0
    day = datetime.date(2010, 1, 4)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "close", "volume"])
        for _ in range(rows):
            r = math.sqrt(var) * rng.gauss(0, 1)
            price *= math.exp(r)
            volume = math.exp(13.0 + 0.5 * math.log(var / 1e-4) + 0.3 * rng.gauss(0, 1))
            w.writerow([day.isoformat(), f"{price:.4f}", f"{volume:.0f}"])
            var = omega + alpha * r * r + beta * var
            day += datetime.timedelta(days=3 if day.weekday() == 4 else 1)

if __name__ == "__main__":
    main(*sys.argv[1:2])
