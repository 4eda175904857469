import argparse

from app.config import APP_TITLE, APP_DESCRIPTION, APP_VERSION
from app.cli import bands, dispersion, mathieu, ring, verify

# Command name -> handler
COMMANDS = {
    "bands": bands.cmd_bands,
    "dispersion": dispersion.cmd_dispersion,
    "mathieu": mathieu.cmd_mathieu,
    "ring": ring.cmd_ring,
    "verify": verify.cmd_verify,
}


def _common_flags() -> argparse.ArgumentParser:
    """Flags shared by every command; unset flags stay None so a config file can supply them"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its values")

    potential = common.add_argument_group("potential")
    potential.add_argument("--potential", choices=["cosine", "parabolic-chain", "tabulated"])
    potential.add_argument("--q", type=float, help="cosine: half the barrier height")
    potential.add_argument("--lc", type=float, help="cosine: length scale l_c")
    potential.add_argument("--wells", type=int, help="number of wells N (ring size for ring)")
    potential.add_argument("--omega", type=float, help="parabolic-chain: well frequency")
    potential.add_argument("--a", type=float, help="parabolic-chain: period")
    potential.add_argument("--x1", type=float, help="parabolic-chain: first well center")
    potential.add_argument("--v0", type=float, help="parabolic-chain: well bottom")
    potential.add_argument("--table", help="tabulated: two-column CSV of x, V")
    potential.add_argument("--order", type=int, choices=[1, 3], help="tabulated: interpolation order")

    run = common.add_argument_group("run")
    run.add_argument("--n", type=int, help="band index")
    run.add_argument("--bands", type=int, nargs="+", help="band indices (mathieu)")
    run.add_argument("--hbar", type=float)
    run.add_argument("--mass", type=float)
    run.add_argument("--scale-convention", choices=["natural", "mathieu"],
                     help="natural: hbar=m=1; mathieu: hbar^2/(2 m l_c^2) = 1")
    run.add_argument("--grid", type=int, help="FD grid points (verify)")
    run.add_argument("--tol", type=float, help="quadrature tolerance")
    run.add_argument("--padding", type=float, help="FD padding beyond the window, in units of l")
    run.add_argument("--k-points", type=int, help="dispersion sample count")
    run.add_argument("--max-order", type=int, help="highest Mathieu order")
    run.add_argument("--basis", type=int, help="initial Mathieu Fourier basis size")

    ring_flags = common.add_argument_group("ring")
    ring_flags.add_argument("--h", type=float, nargs="+", help="ring couplings h_0 .. h_{N-1}")
    ring_flags.add_argument("--h0", type=float)
    ring_flags.add_argument("--h1", type=float)
    ring_flags.add_argument("--chain-heuristic", action="store_const", const=True,
                            help="take h0, h1 from the open-chain band of --n")

    output = common.add_argument_group("output")
    output.add_argument("--out", help="output path (default: standard output)")
    output.add_argument("--format", choices=["csv", "json"])
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multiwell-bands", description=f"{APP_TITLE}: {APP_DESCRIPTION}")
    parser.add_argument("--version", action="version", version=APP_VERSION)
    subparsers = parser.add_subparsers(dest="command", required=True)

    parents = [_common_flags()]
    for module in (bands, dispersion, mathieu, ring, verify):
        module.register(subparsers, parents)
    return parser


__all__ = ["COMMANDS", "build_parser"]
