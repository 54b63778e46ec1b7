"""Build script.

The package is pure Python except for one optional Cython extension,
``koszulkit._modkernel``, holding the dense row-reduction kernel over prime
fields.  If the extension cannot be built the package still installs and
falls back to the pure-Python twin at import time.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "koszulkit._modkernel",
                ["src/koszulkit/_modkernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    sys.stderr.write(f"warning: building without compiled kernel ({exc})\n")

setup(ext_modules=ext_modules)
