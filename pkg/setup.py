"""Build script for the optional compiled batch kernel.

The package is pure Python by default. If Cython and a C compiler are
available, `python setup.py build_ext --inplace` (or a normal wheel build)
compiles `sp4quat._batch_cy`, which `sp4quat.batch` picks up at import time.
Without it, the pure-Python fallback is used transparently.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "sp4quat._batch_cy",
                ["src/sp4quat/_batch_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
