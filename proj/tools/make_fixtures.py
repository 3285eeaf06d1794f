#!/usr/bin/env python3
"""Regenerate the synthetic CSV fixtures under tests/fixtures/.

The curves are evaluated here with plain `math`, independently of the C++
library, so the fixtures double as oracles: every *_params.csv sidecar holds
the exact generating parameters of its data file.

Noiseless fixtures use 10**15 total sales per quarter so that integer
rounding of the BEV count perturbs logit(share) by less than 1e-12.
"""

import math
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"
EPOCH = (2011, 1)
EXACT_TOTAL = 10**15


def quarters(first=(2011, 1), last=(2020, 1)):
    y, q = first
    while (y, q) <= last:
        yield y, q
        q += 1
        if q == 5:
            y, q = y + 1, 1


def t_of(y, q):
    return (y - EPOCH[0]) + (q - EPOCH[1]) / 4.0


def curve(ln_alpha, beta, t):
    return 1.0 / (1.0 + math.exp(ln_alpha - beta * t))


def write(name, header, rows):
    with open(OUT / name, "w", newline="\n") as f:
        f.write(header + "\n")
        for row in rows:
            f.write(",".join(str(c) for c in row) + "\n")


def noiseless_rows(region, ln_alpha, beta):
    for y, q in quarters():
        share = curve(ln_alpha, beta, t_of(y, q))
        yield region, y, q, round(share * EXACT_TOTAL), EXACT_TOTAL


def params_rows(params):
    # ln_alpha is the exact generating value; alpha is derived from it.
    return [(r, repr(math.exp(la)), repr(la), repr(b)) for r, la, b in params]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    sales_header = "region,year,quarter,bev_sales,total_sales"
    params_header = "region,alpha,ln_alpha,beta"

    # Three noiseless regions with known parameters.
    three = [
        ("Alpha Vale", math.log(50.0), 0.8),
        ("Bravo Downs", math.log(200.0), 0.6),
        ("Charlie Fen", math.log(1000.0), 0.9),
    ]
    rows = [r for p in three for r in noiseless_rows(*p)]
    write("three_regions.csv", sales_header, rows)
    write("three_regions_params.csv", params_header, params_rows(three))

    # Same plus a region with no BEV sales at all.
    zero = [("Delta Moor", y, q, 0, 52000) for y, q in quarters()]
    write("with_zero_region.csv", sales_header, rows + zero)

    # Region A has its midpoint at t = 2.0, region B at t = 9.5, and a flat
    # region whose share never moves.
    ab = [("Region A", 2.0, 1.0), ("Region B", 4.75, 0.5)]
    rows = [r for p in ab for r in noiseless_rows(*p)]
    rows += [("Flat Region", y, q, 300000, 1000000) for y, q in quarters()]
    write("crossings_ab.csv", sales_header, rows)
    write("crossings_ab_params.csv", params_header, params_rows(ab))

    # Multi-region fixture whose 50 % midpoints span almost a decade.
    midpoints = [
        ("South East", 13.1, 0.55),
        ("Greater London", 13.6, 0.52),
        ("East of England", 15.2, 0.50),
        ("South West", 16.1, 0.48),
        ("West Midlands", 17.3, 0.46),
        ("East Midlands", 18.4, 0.45),
        ("Yorkshire and the Humber", 19.7, 0.44),
        ("North West", 20.3, 0.43),
        ("North East", 22.05, 0.42),
    ]
    regional = [(r, beta * tm, beta) for r, tm, beta in midpoints]
    rows = [r for p in regional for r in noiseless_rows(*p)]
    write("regional_midpoints.csv", sales_header, rows)
    write("regional_midpoints_params.csv", params_header, params_rows(regional))

    # Pinned-seed noisy fixture: logit-space Gaussian noise, sigma = 0.2.
    rng = random.Random(20200331)
    noisy = [("Noisy North", 6.0, 0.55), ("Noisy South", 4.5, 0.6), ("Noisy West", 7.5, 0.7)]
    rows = []
    for region, ln_alpha, beta in noisy:
        for y, q in quarters():
            total = 40000 + rng.randrange(20000)
            z = beta * t_of(y, q) - ln_alpha + rng.gauss(0.0, 0.2)
            share = 1.0 / (1.0 + math.exp(-z))
            rows.append((region, y, q, round(share * total), total))
    write("noisy_regions.csv", sales_header, rows)
    write("noisy_regions_params.csv", params_header, params_rows(noisy))

    # DfT-shaped extract: twelve regions, realistic volumes, zero-BEV early
    # quarters, through 2020 Q1.
    rng = random.Random(2011)
    dft_regions = [
        "North East", "North West", "Yorkshire and the Humber", "East Midlands",
        "West Midlands", "East of England", "London", "South East", "South West",
        "Wales", "Scotland", "Northern Ireland",
    ]
    rows = []
    for i, region in enumerate(dft_regions):
        beta = 0.45 + 0.02 * (i % 5)
        t_mid = 12.5 + 0.8 * ((i * 7) % 12)
        for y, q in quarters():
            total = 20000 + rng.randrange(60000)
            z = beta * (t_of(y, q) - t_mid) + rng.gauss(0.0, 0.1)
            share = 1.0 / (1.0 + math.exp(-z))
            rows.append((region, y, q, int(share * total), total))
    write("dft_extract_synthetic.csv", sales_header, rows)

    charger_header = "region,year,quarter,public_chargers,bev_stock"
    # Mirrors the regional charger comparison: West Midlands lowest at 0.8,
    # South East second lowest at 1.0.
    write("chargers_regional.csv", charger_header, [
        ("Greater London", 2020, 1, 5000, 20000),
        ("South East", 2020, 1, 2500, 25000),
        ("West Midlands", 2020, 1, 800, 10000),
        ("Scotland", 2020, 1, 1600, 8000),
        ("North East", 2020, 1, 490, 3500),
        ("South West", 2020, 1, 1300, 9000),
        ("Yorkshire and the Humber", 2020, 1, 900, 7500),
    ])
    write("chargers_all_adequate.csv", charger_header, [
        ("Region One", 2020, 1, 100, 1000),
        ("Region Two", 2020, 1, 150, 1000),
        ("Region Three", 2020, 1, 400, 2000),
    ])
    write("chargers_no_data.csv", charger_header, [
        ("Empty Isle", 2020, 1, 12, 0),
        ("Busy Shire", 2020, 1, 90, 1000),
        ("Quiet Dale", 2020, 1, 30, 200),
    ])


if __name__ == "__main__":
    main()
