from setuptools import Extension, setup

# The compiled scan kernel is optional: if Cython (or a C compiler) is
# missing, the package falls back to the pure-Python implementation with
# identical semantics (see vfk.scankernel).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("vfk._scan", ["src/vfk/_scan.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
