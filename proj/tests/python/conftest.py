"""Make the in-tree package importable against the CMake-built _core module."""

import shutil
import sys
from pathlib import Path

root = Path(__file__).resolve().parents[2]
pkg_src = root / "python"
build = Path(__import__("os").environ.get("SPECTRAL_BUILD_DIR", root / "build"))

so_files = list(build.glob("_core*.so"))
if so_files:
    target = pkg_src / "spectral_transfer" / so_files[0].name
    if not target.exists() or so_files[0].stat().st_mtime > target.stat().st_mtime:
        shutil.copy2(so_files[0], target)
sys.path.insert(0, str(pkg_src))
