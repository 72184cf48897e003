#!/usr/bin/env python3
"""
Benchmark runner for zonecross.

Runs the clean-signal gate, the LoS-distance sweep and the prominence/SNR
frontier, and writes the combined results as JSON.
"""
import os
import sys
import argparse
import json
from dotenv import load_dotenv

# Add src to path for imports
project_root = os.path.join(os.path.dirname(__file__), '..', 'src')
sys.path.insert(0, project_root)

from zonecross.config import get_logger, setup_logging
from zonecross.metrics.benchmarks import BenchmarkSuite
from zonecross.metrics.evaluator import SuiteConfig, SuiteEvaluator

logger = get_logger("scripts.run_benchmarks")


def print_quick_summary(results):
    """Print a quick summary of benchmark results."""
    print(f"\n📊 Quick Summary:")

    if 'clean' in results:
        clean = results['clean']
        print(f" • Clean gate accuracy: {clean['accuracy']:.4f} "
              f"(false alarms {clean['false_alarm_rate']:.4f})")

    if 'los' in results:
        for row in results['los']['rows']:
            print(f" • LoS {row['los_distance_m']:g} m: accuracy {row['accuracy']:.3f}")
        trend = "✅" if results['los']['non_increasing'] else "⚠️ "
        print(f" {trend} Accuracy non-increasing with distance: {results['los']['non_increasing']}")

    if 'frontier' in results:
        met = [r for r in results['frontier'] if r['target_met']]
        print(f" • Frontier points meeting targets: {len(met)}/{len(results['frontier'])}")


def main():
    """Main benchmark runner function."""
    parser = argparse.ArgumentParser(description='Run zonecross detection benchmarks')
    parser.add_argument('--benchmark',
                        choices=['clean', 'los', 'frontier', 'all'],
                        default='clean',
                        help='Type of benchmark to run')
    parser.add_argument('--suite', type=str,
                        help='Suite file (YAML/JSON) used as the base configuration')
    parser.add_argument('--per-class', type=int, default=35,
                        help='Trials per class for the clean gate')
    parser.add_argument('--trials-per-distance', type=int, default=60,
                        help='Trials per LoS distance for the sweep')
    parser.add_argument('--workers', type=int, default=int(os.getenv('ZONECROSS_WORKERS', '1')),
                        help='Worker processes')
    parser.add_argument('--output', type=str, default='benchmark_results.json',
                        help='Output file for benchmark results')

    args = parser.parse_args()

    # Load environment variables
    load_dotenv()
    setup_logging(os.getenv('ZONECROSS_LOG_LEVEL', 'INFO'))

    print("🚀 zonecross Benchmark Suite")
    print("=" * 50)

    suite = SuiteConfig.from_file(args.suite) if args.suite else SuiteConfig()
    benchmark_suite = BenchmarkSuite(SuiteEvaluator(workers=args.workers, progress=True))
    results = {}

    try:
        if args.benchmark in ('clean', 'all'):
            print(f"\n🧪 Running clean-signal gate...")
            report = benchmark_suite.run_clean_gate(suite, per_class=args.per_class)
            results['clean'] = report.to_dict()['performance_metrics']

        if args.benchmark in ('los', 'all'):
            print(f"\n📏 Running LoS-distance sweep...")
            results['los'] = benchmark_suite.run_los_sweep(
                suite, trials_per_distance=args.trials_per_distance
            )

        if args.benchmark in ('frontier', 'all'):
            print(f"\n📈 Running prominence/SNR frontier...")
            results['frontier'] = benchmark_suite.run_frontier(suite)

    except KeyboardInterrupt:
        print("\n⏹️ Benchmark interrupted by user")
        sys.exit(1)
    except Exception as e:
        logger.debug("Benchmark failed", exc_info=True)
        print(f"\n❌ Benchmark failed: {e}")
        sys.exit(4)

    with open(args.output, 'w') as f:
        json.dump(results, f, indent=2, sort_keys=True)
    print(f"\n💾 Results saved to {args.output}")
    logger.debug("Wrote %d benchmark sections", len(results))

    print_quick_summary(results)


if __name__ == "__main__":
    main()
