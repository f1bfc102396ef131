"""
Mirror MF Verifier

Exact checks of Landau-Ginzburg potentials, strip-built matrix factorizations,
twisted torus Floer complexes and a small Fukaya-category equivalence.
"""

import sys

from dotenv import load_dotenv

from mirror_mf.api.cli import main

# Load environment variables
load_dotenv()


if __name__ == "__main__":
    sys.exit(main())
