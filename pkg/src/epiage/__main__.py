"""Entry point for python -m epiage."""

from .cli import main

raise SystemExit(main())
