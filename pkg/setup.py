"""Build script: compiles the optional search kernel extension.

The package works without the extension (a pure-Python twin is selected at
import time), so a failed compile downgrades to a source-only install instead
of aborting.
"""

from setuptools import Extension, setup

extensions = []
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("doubletrace._search", ["src/doubletrace/_search.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"skipping compiled search kernel: {exc}")

setup(ext_modules=extensions)
