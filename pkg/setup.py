"""Build script.

The compiled scan kernel is optional: when Cython is available the
extension is built, otherwise the package falls back to the pure-Python
kernel at import time. Build it in place with:

    python setup.py build_ext --inplace
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/tiergraph/scan/_ckernels.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
