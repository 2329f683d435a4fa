#!/usr/bin/env python
# Licensed under a 3-clause BSD style license - see LICENSE.md

import ast
import glob
import os
import sys
from configparser import ConfigParser

from setuptools import setup, find_packages

__minimum_python_version__ = "3.10"

# Same check as in matcon/__init__.py, done early so installs fail fast.
if sys.version_info < tuple((int(val) for val in __minimum_python_version__.split('.'))):
    sys.stderr.write("ERROR: matcon requires Python {} or later\n".format(__minimum_python_version__))
    sys.exit(1)

# Get some values from the setup.cfg
conf = ConfigParser()
conf.read(['setup.cfg'])
metadata = dict(conf.items('metadata'))

PACKAGENAME = metadata.get('package_name', 'matcon')
DESCRIPTION = metadata.get('description', '')
AUTHOR = metadata.get('author', '')
AUTHOR_EMAIL = metadata.get('author_email', '')
LICENSE = metadata.get('license', 'unknown')
URL = metadata.get('url', '')

# Get the long description from the package's docstring
with open(os.path.join(PACKAGENAME, '__init__.py')) as f:
    module_ast = ast.parse(f.read())
LONG_DESCRIPTION = ast.get_docstring(module_ast)

# Single source of the version number
version_ns = {}
with open(os.path.join(PACKAGENAME, 'version.py')) as f:
    exec(f.read(), version_ns)
VERSION = version_ns['version']

# Treat everything in scripts except README.rst as a script to be installed
scripts = [fname for fname in glob.glob(os.path.join('scripts', '*'))
           if os.path.basename(fname) != 'README.rst']

install_requires_packages = [
    'numpy>=1.22',
    'scipy>=1.9',
    'matplotlib>=3.5',
    'astropy>=5.0',
    'networkx>=2.8',
]

setup(name=PACKAGENAME,
      version=VERSION,
      description=DESCRIPTION,
      scripts=scripts,
      python_requires='>=' + __minimum_python_version__,
      install_requires=install_requires_packages,
      extras_require={'test': ['pytest>=7'],
                      'docs': ['sphinx', 'sphinx-astropy']},
      provides=[PACKAGENAME],
      author=AUTHOR,
      author_email=AUTHOR_EMAIL,
      license=LICENSE,
      url=URL,
      long_description=LONG_DESCRIPTION,
      packages=find_packages(include=[PACKAGENAME, PACKAGENAME + '.*']),
      package_data={PACKAGENAME: ['matcon.cfg']},
      zip_safe=False,
      )
