"""Build script for the optional compiled search kernels.

The package is fully functional without the extension: ``pcfactor._kernels``
falls back to the pure-Python implementation when the compiled module is
missing. Set PCFACTOR_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Try to build the accelerator; degrade to pure Python on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"warning: compiled kernels not built ({exc}); "
              "falling back to pure-Python kernels")


def extensions():
    if os.environ.get("PCFACTOR_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython unavailable; building without compiled kernels")
        return []
    return cythonize(
        [Extension("pcfactor._kernels._speed",
                   ["src/pcfactor/_kernels/_speed.pyx"])],
        language_level="3",
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
