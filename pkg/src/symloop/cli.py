"""CLI entry point for symloop.

The `symloop` command provides a unified interface with subcommands:
  symloop validate, info, geodesic, enumerate, cs-product, power, bott, verify-cert,
  product, plot
"""

import sys
from difflib import get_close_matches

from symloop import bottcycles, csring, geodesics, plot, products, rootspace, spectrum

SUBCOMMANDS = {
    "validate": rootspace.main,
    "info": rootspace.info_main,
    "geodesic": geodesics.main,
    "enumerate": spectrum.main,
    "cs-product": csring.main,
    "power": csring.power_main,
    "bott": bottcycles.main,
    "verify-cert": bottcycles.verify_main,
    "product": products.main,
    "plot": plot.main,
}

MAIN_HELP = """\
symloop - closed geodesics and string topology of compact symmetric spaces

Usage: symloop <command> [OPTIONS]

Spaces:
  validate     Check the invariants of a space definition
  info         Roots, lattice and Weyl group of a space
  product      Compose spaces and check the product splitting

Geodesics and critical manifolds:
  geodesic     Conjugate times, index, nullity and μ of σ_H
  enumerate    Critical manifolds up to an energy bound

Chas–Sullivan ledger:
  cs-product   Leading term of the product of two completing classes
  power        Degrees of the powers of the fundamental class Θ

Based loops:
  bott         Γ_P dimension and coproduct verdict for plane families
  verify-cert  Verify a polygon certificate

Pictures:
  plot         SVG of singular planes, lattice and chamber (rank 2)

Spaces are catalog names (sphere(3), cpn(2), gr2c4, sphere(2)*sphere(3))
or paths to space files; --product S1,S2 works wherever --space does.

Examples:
  symloop geodesic --space gr2c4 --H 2,1
  symloop enumerate --space sphere3 --energy 16
  symloop bott --space gr2c4 --planes 1:1 --out cert.json
  symloop verify-cert cert.json

Use 'symloop <command> --help' for command-specific help."""


def run(argv: list[str] | None = None) -> int:
    """Dispatch *argv* to a subcommand and return its exit code."""
    args = sys.argv[1:] if argv is None else argv

    if not args or args[0] in ("--help", "-h"):
        print(MAIN_HELP)
        return 0

    if args[0] == "--version":
        from symloop import __version__

        print(f"symloop {__version__}")
        return 0

    cmd = args[0]
    if cmd not in SUBCOMMANDS:
        print(f"Error: Unknown command '{cmd}'", file=sys.stderr)
        matches = get_close_matches(cmd, SUBCOMMANDS.keys(), n=1, cutoff=0.5)
        if matches:
            print(f"Did you mean: {matches[0]}", file=sys.stderr)
        print("hint: use 'symloop --help' to see available commands", file=sys.stderr)
        return 2

    return SUBCOMMANDS[cmd](args[1:]) or 0


def main() -> None:
    """Main `symloop` entry point with subcommands."""
    sys.exit(run())
