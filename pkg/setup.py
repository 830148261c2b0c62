"""Build script: compiles the optional Cython kernel when Cython is present.

The package works without the extension (a pure-Python twin of the kernel is
selected at import time), so a missing compiler only costs speed.
"""

import os

from setuptools import Extension, setup

PYX = os.path.join("src", "qtbranch", "_kernel_cy.pyx")

ext_modules = []
if os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("qtbranch._kernel_cy", [PYX])], language_level=3
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
