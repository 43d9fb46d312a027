"""Entry point for python -m sqorbits."""
from .cli import main

raise SystemExit(main())
