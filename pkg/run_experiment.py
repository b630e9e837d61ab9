#!/usr/bin/env python3
"""Run a qu5it experiment subcommand from a checkout (spectrum, evolve, resources, signprob, verify, bench)."""

import sys
import os

# Add repository root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from qu5it.runner.cli import main

if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n👋 Interrupted")
        sys.exit(1)
    except Exception as e:
        print(f"❌ Error: {e}")
        sys.exit(1)
