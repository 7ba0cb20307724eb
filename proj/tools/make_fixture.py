#!/usr/bin/env python3
"""Generates the bundled synthetic feed fixtures.

crash_day.csv  a one-day (144 x 10 min) ETH crash of roughly 43% with a gas
               spike while prices fall and a partial recovery afterwards.
flat_day.csv   constant price and gas; nothing should ever be liquidated.

Output is fully deterministic; rerunning overwrites the files byte-for-byte.
"""

import argparse
import math
from pathlib import Path

START = 1621382400  # 2021-05-19T00:00:00Z
TICKS = 144
STEP = 600
LIQUIDITY = 1.5e6  # sqrt(k) of the constant-product pool

HEADER = "timestamp,eth_price_dai,gas_price_gwei,uniswap_eth_reserve,uniswap_dai_reserve"


def smoothstep(x):
    x = min(1.0, max(0.0, x))
    return x * x * (3 - 2 * x)


def crash_price(t):
    wiggle = 1 + 0.012 * math.sin(t * 0.9) + 0.008 * math.sin(t * 2.3 + 1.0)
    if t < 36:
        base = 3400
    elif t < 84:
        base = 3400 - 1450 * smoothstep((t - 36) / 48)
    else:
        base = 1950 + 550 * smoothstep((t - 84) / 60)
    return base * wiggle


def crash_gas(t):
    base = 70 + 10 * math.sin(t * 0.7)
    spike = 0.0
    if 34 <= t <= 104:
        phase = (t - 34) / 70
        # Congestion comes in bursts with short cheap windows between them.
        burst = max(0.0, math.sin(0.45 * t + 0.3) + 0.6) / 1.6
        spike = 560 * math.sin(math.pi * phase) * burst
    return base + max(0.0, spike)


def row(t, price, gas):
    eth = LIQUIDITY / math.sqrt(price)
    dai = LIQUIDITY * math.sqrt(price)
    return f"{START + t * STEP},{price:.2f},{gas:.2f},{eth:.6f},{dai:.2f}"


def write(path, price_fn, gas_fn):
    lines = [HEADER] + [row(t, price_fn(t), gas_fn(t)) for t in range(TICKS)]
    path.write_text("\n".join(lines) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "synthetic")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    write(args.out / "crash_day.csv", crash_price, crash_gas)
    write(args.out / "flat_day.csv", lambda t: 3000.0, lambda t: 100.0)


if __name__ == "__main__":
    main()
