"""Build script: compiles the optional sieve kernel.

The extension is a pure optimization; if Cython or a C compiler is missing the
install must still succeed and speclab.kernels falls back to numpy.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "speclab.kernels._fastcore",
                ["src/speclab/kernels/_fastcore.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception:
    pass


class _OptionalBuildError(Exception):
    pass


def _optional(cls):
    class Wrapped(cls):
        def run(self):
            try:
                super().run()
            except Exception:
                print("warning: speclab fast kernel not built; using numpy fallback")

        def build_extension(self, ext):
            try:
                super().build_extension(ext)
            except Exception:
                print("warning: %s not built; using numpy fallback" % ext.name)

    return Wrapped


try:
    from setuptools.command.build_ext import build_ext

    cmdclass = {"build_ext": _optional(build_ext)}
except Exception:
    cmdclass = {}

setup(ext_modules=ext_modules, cmdclass=cmdclass)
