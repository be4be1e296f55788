# Main entry point for Grid Coloring Lab

import os
import sys

# Ensure the project root is on the Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli import main as cli_main


def main():
    """Main function to start the Grid Coloring Lab command line"""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
