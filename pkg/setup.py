from setuptools import Extension, setup

# The compiled orbit kernel is optional: the package falls back to the
# pure-Python twin in gsbs/_orbit_py.py when the extension is absent.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("gsbs._orbit_cy", ["src/gsbs/_orbit_cy.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
