#!/usr/bin/env python3
"""
Main entry point for the volprod command line tool.
"""

import sys
import traceback
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent))

from dotenv import load_dotenv

from cli import EXIT_FAILED, run


def main():
    """Load .env, run the command, exit with its code."""
    load_dotenv()
    try:
        code = run(sys.argv[1:])
    except KeyboardInterrupt:
        print("::error::Interrupted", file=sys.stderr)
        code = EXIT_FAILED
    except Exception as e:
        # Unexpected errors
        print(f"::error::Unexpected error: {str(e)}", file=sys.stderr)
        print(f"::debug::Traceback: {traceback.format_exc()}", file=sys.stderr)
        code = EXIT_FAILED
    sys.exit(code)


if __name__ == '__main__':
    main()
