"""Access to the bundled example documents.

The package ships a small set of object documents (channels, states,
observables) used throughout the docs and tests.  ``fixture_path`` resolves
a name like ``"identity"`` to the installed JSON file; running
``python3 -m gaussbreak.fixtures`` lists the available names, and with an
argument prints one resolved path for shell substitution.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import InvalidInputError

__all__ = ["fixture_path", "list_fixtures"]


def _base():
    return resources.files("gaussbreak") / "fixtures"


def list_fixtures() -> list[str]:
    """Names of all bundled documents, without the .json suffix."""
    return sorted(p.name[:-5] for p in _base().iterdir() if p.name.endswith(".json"))


def fixture_path(name: str) -> Path:
    """Filesystem path of one bundled document."""
    stem = name[:-5] if name.endswith(".json") else name
    target = _base() / f"{stem}.json"
    if not target.is_file():
        known = ", ".join(list_fixtures())
        raise InvalidInputError(f"unknown fixture {name!r}; available: {known}")
    return Path(str(target))


if __name__ == "__main__":
    import sys

    if len(sys.argv) > 1:
        print(fixture_path(sys.argv[1]))
    else:
        print("\n".join(list_fixtures()))
