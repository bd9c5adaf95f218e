"""Reference outputs shipped with the package and the code that renders them."""

from __future__ import annotations

from importlib import resources

NAMES = ("table1.json", "cubic.txt", "qhf_d6.txt")


def render(name: str) -> str:
    from ..catalog.e8 import cubic_text
    from ..catalog.models import matching_label, matching_positions
    from ..catalog.table1 import table1_json
    from ..poly import quantum_hafnian
    from ..rootsys import build_root_system

    if name == "table1.json":
        return table1_json()
    if name == "cubic.txt":
        return cubic_text()
    if name == "qhf_d6.txt":
        rs = build_root_system("D6")
        return quantum_hafnian(rs, tuple(matching_positions(rs))).to_text(matching_label(rs))
    raise KeyError(name)


def read(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text()


def regenerate(directory=None) -> None:
    """Rewrite the shipped files (or write them into ``directory``)."""
    from pathlib import Path

    base = Path(directory) if directory else Path(__file__).parent
    for name in NAMES:
        (base / name).write_text(render(name))


if __name__ == "__main__":
    regenerate()
