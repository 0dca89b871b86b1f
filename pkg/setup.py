from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [Extension("pathecc._speedups", ["src/pathecc/_speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
