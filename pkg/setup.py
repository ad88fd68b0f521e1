"""Build the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time), so any build failure here downgrades
to a warning instead of aborting the install.
"""
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"skipping optional C extension: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping optional C extension {ext.name}: {exc}")


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("awspec._kernels", ["src/awspec/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    warnings.warn("Cython not available; installing pure-Python build")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
