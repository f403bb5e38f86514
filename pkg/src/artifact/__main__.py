"""Module entry point: ``python -m artifact`` behaves like the ``mixed3`` script."""

from .cli import main

if __name__ == "__main__":
    main()
