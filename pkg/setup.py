"""Build script: compiles the optional Cython kernel.

The package works without the extension (a numpy/pure-Python fallback is
selected at import time), so any failure here downgrades to a pure build
instead of aborting the install.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/groupgeo/_kernel/_ops_cy.pyx"],
        language_level=3,
    )
    include_dirs = [numpy.get_include()]
except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
    print(f"groupgeo: skipping compiled kernel ({exc}); pure-Python fallback will be used")
    include_dirs = []

setup(
    ext_modules=ext_modules,
    include_dirs=include_dirs,
)
