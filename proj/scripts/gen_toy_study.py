#!/usr/bin/env python3
"""Regenerate the bundled toy study under studies/toy/.

Three bidding zones, each with a reference, a high-full-load-hours and a
high-market-value wind profile, a cheap baseload unit and a fuel-burning
turbine. Two weeks of hourly data per weather year, three weather years,
four capacity mixes, three fuel price levels: 36 scenarios.

Everything is derived from a fixed seed, so the output is reproducible
byte for byte.
"""

import math
import random
from pathlib import Path

HOURS = 336
SEED = 20240811
YEARS = ("2010", "2015", "2019")
YEAR_DEMAND_OFFSET = {"2010": -0.02, "2015": 0.0, "2019": 0.025}

ZONES = {
    # base_wind: mean capacity factor of the reference profile
    "DK": dict(base_wind=0.42, demand=9.5, phase=0.0, base_mc=24.0, ccgt=7.0),
    "ES": dict(base_wind=0.34, demand=11.4, phase=2.1, base_mc=28.0, ccgt=6.0),
    "FR": dict(base_wind=0.38, demand=10.0, phase=4.2, base_mc=22.0, ccgt=7.0),
}

# nominal wind capacity in MW per profile, scaled by the mix multipliers
NOMINAL = {"ref": 2.0, "flh": 1.5, "mv": 1.2}
MIXES = {
    "mix1": {"ref": 1.0, "flh": 1.0, "mv": 1.0},
    "mix2": {"ref": 1.2, "flh": 0.9, "mv": 1.0},
    "mix3": {"ref": 0.9, "flh": 1.1, "mv": 1.15},
    "mix4": {"ref": 1.1, "flh": 1.0, "mv": 0.85},
}

FUEL_LEVELS = ("45.07", "116.9", "188.73")


def clip(value, low, high):
    return max(low, min(high, value))


def ar_noise(rng, hours, sigma, rho=0.7):
    """Smooth autoregressive noise so hourly series do not jitter wildly."""
    series = []
    previous = 0.0
    for _ in range(hours):
        previous = rho * previous + rng.gauss(0.0, sigma)
        series.append(previous)
    return series


def wind_signal(zone, year):
    """Hourly capacity factors of the zone's reference profile."""
    p = ZONES[zone]
    rng = random.Random(f"{SEED}:wind:{zone}:{year}")
    period_a = rng.uniform(58.0, 82.0)  # synoptic weather systems
    period_b = rng.uniform(110.0, 150.0)
    phase_a = rng.uniform(0.0, 2.0 * math.pi)
    phase_b = rng.uniform(0.0, 2.0 * math.pi)
    noise = ar_noise(rng, HOURS, 0.04)
    series = []
    for t in range(HOURS):
        value = (p["base_wind"]
                 + 0.26 * math.sin(2.0 * math.pi * t / period_a + phase_a)
                 + 0.13 * math.sin(2.0 * math.pi * t / period_b + phase_b)
                 + 0.07 * math.sin(2.0 * math.pi * t / 24.0 + p["phase"])
                 + noise[t])
        series.append(clip(value, 0.02, 0.98))
    return series


def profiles(zone, year):
    """Reference, high-FLH and high-MV capacity factor series of one zone."""
    p = ZONES[zone]
    wind = wind_signal(zone, year)
    rng = random.Random(f"{SEED}:prof:{zone}:{year}")
    flh_noise = ar_noise(rng, HOURS, 0.02)
    mv_noise = ar_noise(rng, HOURS, 0.03)
    flh = []
    mv = []
    for t in range(HOURS):
        # the same weather, pushed towards permanent output: high full load
        # hours, but most generation falls into windy (cheap) hours
        flh.append(clip(0.17 + 0.78 * wind[t] + flh_noise[t], 0.02, 0.99))
        # runs against the zone wind and towards the demand peak: less
        # energy, but sold at above-average prices
        peak = math.sin(2.0 * math.pi * (t - 14) / 24.0)
        value = (0.33 + 0.45 * (p["base_wind"] - wind[t]) + 0.08 * peak
                 + mv_noise[t])
        mv.append(clip(value, 0.02, 0.98))
    return {"ref": wind, "flh": flh, "mv": mv}


def demand_series(zone, year):
    p = ZONES[zone]
    rng = random.Random(f"{SEED}:load:{zone}:{year}")
    noise = ar_noise(rng, HOURS, 0.015)
    series = []
    for t in range(HOURS):
        shape = (1.0
                 + 0.16 * math.sin(2.0 * math.pi * (t - 9) / 24.0)
                 + 0.05 * math.sin(2.0 * math.pi * t / 168.0)
                 + YEAR_DEMAND_OFFSET[year]
                 + noise[t])
        series.append(p["demand"] * max(0.5, shape))
    return series


def write_weather(data_dir):
    for year in YEARS:
        cf_lines = ["hour,plant,value"]
        demand_lines = ["hour,zone,value"]
        for zone in ZONES:
            series = profiles(zone, year)
            for kind in ("ref", "flh", "mv"):
                plant = f"{zone}_{kind}"
                for t, value in enumerate(series[kind]):
                    cf_lines.append(f"{t},{plant},{value:.6f}")
            for t, value in enumerate(demand_series(zone, year)):
                demand_lines.append(f"{t},{zone},{value:.4f}")
        (data_dir / f"cf_{year}.csv").write_text("\n".join(cf_lines) + "\n")
        (data_dir / f"demand_{year}.csv").write_text(
            "\n".join(demand_lines) + "\n")


def write_study(study_dir):
    lines = [
        "# Bundled toy study: three zones, nine wind profiles, 36 scenarios.",
        "# Regenerate with scripts/gen_toy_study.py; do not edit by hand.",
        "",
        f"hours = {HOURS}",
        "zones = " + ", ".join(ZONES),
        "",
        "plants = " + ", ".join(
            f"{zone}_{kind}" for zone in ZONES for kind in NOMINAL),
    ]
    label = {"ref": "reference", "flh": "high_flh", "mv": "high_mv"}
    for zone in ZONES:
        for kind in NOMINAL:
            lines.append(f"plant.{zone}_{kind}.zone = {zone}")
            lines.append(f"plant.{zone}_{kind}.label = {label[kind]}")
    lines += [
        "",
        "variable_cost = 1.3",
        "invest_cost = 120000",
        "interest_rate = 0.055",
        "lifetime_years = 25",
        "",
        "units = " + ", ".join(
            f"{zone}_{unit}" for zone in ZONES for unit in ("base", "ccgt")),
    ]
    for zone, p in ZONES.items():
        lines.append(f"unit.{zone}_base.zone = {zone}")
        lines.append(f"unit.{zone}_base.marginal_cost = {p['base_mc']:g}")
        lines.append(f"unit.{zone}_ccgt.zone = {zone}")
        lines.append(f"unit.{zone}_ccgt.fuel_efficiency = 0.58")
    lines += [
        "",
        "price_cap = 617",
        "shed_price = 4000",
        "fuel_price_levels = " + ", ".join(FUEL_LEVELS),
        "demand_response = 617:0.05, 1500:0.07",
        "",
        "weather_variants = " + ", ".join(YEARS),
    ]
    for year in YEARS:
        lines.append(f"weather.{year}.capacity_factors = data/cf_{year}.csv")
        lines.append(f"weather.{year}.demand = data/demand_{year}.csv")
    lines += ["", "invest_variants = " + ", ".join(MIXES)]
    for mix, scale in MIXES.items():
        for zone, p in ZONES.items():
            for kind, nominal in NOMINAL.items():
                capacity = nominal * scale[kind]
                lines.append(
                    f"invest.{mix}.capacity.{zone}_{kind} = {capacity:g}")
            lines.append(f"invest.{mix}.capacity.{zone}_base = 6")
            lines.append(f"invest.{mix}.capacity.{zone}_ccgt = {p['ccgt']:g}")
    lines += [
        "",
        "contracted_plants = DK_ref, DK_flh, DK_mv, ES_ref, ES_flh, ES_mv",
        "output_dir = out",
        "",
    ]
    (study_dir / "study.conf").write_text("\n".join(lines))


def main():
    study_dir = Path(__file__).resolve().parents[1] / "studies" / "toy"
    data_dir = study_dir / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    write_weather(data_dir)
    write_study(study_dir)
    print(f"wrote {study_dir}")


if __name__ == "__main__":
    main()
