"""Optional compiled kernels.

The Cython extension is built when Cython and a C compiler are available.
Set COMPUTADS_NO_EXT=1 to skip it; the package then runs on its
pure-Python kernels.
"""
import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("COMPUTADS_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "computads._ckernels",
        ["src/computads/_ckernels.pyx"],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)


setup(ext_modules=_extensions())
