# graphmat.py
"""Command line entry point"""

from sys import exit as sys_exit

from dotenv import load_dotenv

load_dotenv()

# pylint: disable=wrong-import-position
from bench.cli import cli_main

if __name__ == "__main__":
    try:
        sys_exit(cli_main())
    except KeyboardInterrupt:
        print("Interrupted by user.")
        sys_exit(130)
