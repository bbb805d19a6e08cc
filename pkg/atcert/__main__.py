"""Allow ``python -m atcert``."""

from .cli import main

main()
