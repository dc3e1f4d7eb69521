"""Main entry point for the hybrid loss toolkit."""

from .cli import main

if __name__ == "__main__":
    main()
