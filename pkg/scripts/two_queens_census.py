"""Mate lengths of every two-queens-against-king placement around the origin."""

import argparse
import logging

from infchess.services.census import CENSUS_BOUND, CENSUS_RADIUS, two_queens_census
from infchess.services.solver import SearchBudget


def main() -> None:
    parser = argparse.ArgumentParser(description="Two white queens against a lone black king: value census")
    parser.add_argument("--radius", type=int, default=CENSUS_RADIUS, help="Queens stay within this distance of the king")
    parser.add_argument("--mate-in", dest="mate_in", type=int, default=CENSUS_BOUND, help="Longest mate searched")
    parser.add_argument("--horizon", type=int, help="Largest queen distance tried (default 2*radius+4)")
    parser.add_argument("--node-limit", dest="node_limit", type=int, default=10_000_000)
    parser.add_argument("--limit", type=int, help="Stop after this many placements")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    budget = SearchBudget(
        mate_bound=args.mate_in, horizon=args.horizon or 2 * args.radius + 4, node_limit=args.node_limit
    )
    result = two_queens_census(args.radius, budget, limit=args.limit)
    print(result.summary_line())
    for first, second in result.unresolved:
        print(f"unresolved: queens on {first} and {second}")
    if result.unresolved:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
