#!/usr/bin/env python3
"""
Log the closed-form / numeric band-width ratio for the cosine potential
over a sweep of barrier heights (energies in units of hbar^2/(2 m l_c^2))
"""
import logging
import sys
import os
import argparse

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.middleware.error import AppError
from app.services.mathieu import mathieu_characteristics
from app.services.semiclassics import mathieu_band_width_closed

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
)
logger = logging.getLogger(__name__)

DEFAULT_Q = [16.0, 25.0, 36.0, 49.0]


def sweep(q_values, n: int = 0):
    """Return (q, closed, numeric, ratio) for each q"""
    table = []
    for q in q_values:
        numeric = mathieu_characteristics(q, max_order=n).band_widths[n]
        closed = mathieu_band_width_closed(n, q)
        table.append((q, closed, numeric, closed / numeric))
    return table


def main():
    parser = argparse.ArgumentParser(description="Closed-form vs numeric cosine band widths")
    parser.add_argument('--n', type=int, default=0, help='Band index')
    parser.add_argument('--q', type=float, nargs='+', default=DEFAULT_Q, help='Barrier parameters')
    args = parser.parse_args()

    try:
        for q, closed, numeric, ratio in sweep(args.q, args.n):
            logger.info(f"q={q:g} n={args.n}: closed {closed:.6e}, numeric {numeric:.6e}, ratio {ratio:.4f}")
    except AppError as e:
        logger.error(f"Sweep failed: {e.message}")
        sys.exit(e.exit_code)


if __name__ == "__main__":
    main()
