"""Build script for the optional compiled kernel extension.

The package works without the extension: apisum.kernels falls back to the
pure-Python implementation at import time.  Set APISUM_SKIP_EXTENSION=1 to
skip the build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, install pure-Python otherwise."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # toolchain missing or broken
            self._warn(exc)

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        import warnings

        warnings.warn(
            "compiled kernels unavailable, falling back to pure Python: %s" % exc
        )


if os.environ.get("APISUM_SKIP_EXTENSION"):
    ext_modules = []
    cmdclass = {}
else:
    from Cython.Build import cythonize

    extensions = [
        Extension(
            "apisum.kernels._ckernels",
            sources=["src/apisum/kernels/_ckernels.pyx"],
            # no -ffast-math: the fallback must produce the same IEEE results
            extra_compile_args=["-O2"],
        )
    ]
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
    cmdclass = {"build_ext": optional_build_ext}

setup(ext_modules=ext_modules, cmdclass=cmdclass)
