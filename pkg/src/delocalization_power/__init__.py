"""Delocalization Power - clasificador de compuertas de dos qudits por su poder de deslocalizacion."""

from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

__app_name__ = "dlp"
__package_name__ = "delocalization-power"


def _get_version() -> str:
    """Retrieves the package version from pyproject.toml, then from the installed metadata."""
    import tomli

    try:
        pyproject_path = Path(__file__).parent.parent.parent / "pyproject.toml"
        if pyproject_path.exists():
            with open(pyproject_path, "rb") as f:
                return tomli.load(f)["project"]["version"]
    except Exception:
        pass
    try:
        return version(__package_name__)
    except PackageNotFoundError:
        return "0.0.0"


__version__ = _get_version()

__all__ = ["__app_name__", "__package_name__", "__version__"]
