"""Print the deployment and call cost tables under both gas presets.

The calibrated preset reproduces the measured figures the package is
tuned against; the formula preset derives costs from payload size and
storage writes, keeping the same ordering and create-call dominance.
"""

from dvre.gasreport import build_report


def show(preset: str) -> None:
    report = build_report(preset)
    print(f"--- preset: {preset} ({report['mode']}) ---")
    print("deployments:")
    for kind, cost in report["deploy"].items():
        print(f"  {kind:<18} {cost:>10,}")
    print("calls:")
    for name, cost in report["functions"].items():
        print(f"  {name:<22} {cost:>10,}")
    for pair, delta in report["deltas"].items():
        print(f"  delta {pair}: {delta:,}")
    for name, ratio in report["create_call_ratios"].items():
        print(f"  {name} vs plain-call median: {ratio}x")
    ordering = report["ordering"]
    print(f"  deploy order as published: {ordering['deploy_order_expected']}")
    print(f"  create calls dominate: {ordering['create_calls_dominate']}")
    print()


def main():
    for preset in ("calibrated", "formula"):
        show(preset)


if __name__ == "__main__":
    main()
