from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("biham.exactalg._speedups", ["src/biham/exactalg/_speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # The compiled kernel is optional; the pure-Python fallback is always shipped.
    ext_modules = []

setup(ext_modules=ext_modules)
