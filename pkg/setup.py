"""Build the optional Cython kernels; without Cython the package installs pure Python."""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("DIVERSAT_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("diversat._ckernels", ["src/diversat/_ckernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
