#!/usr/bin/env python
# Licensed under a 3-clause BSD style license - see LICENSE.rst

import os
import re

from setuptools import setup

# package-specific values
PACKAGENAME = 'kbound'
DESCRIPTION = ('Grid certification of bounds on sums of comparison '
               'functions')
AUTHOR = 'The kbound Developers'
LICENSE = 'BSD'


def get_version():
    fname = os.path.join(os.path.dirname(__file__), PACKAGENAME,
                         '__init__.py')
    with open(fname) as f:
        return re.search(r"^__version__ = '([^']+)'", f.read(), re.M).group(1)


def read_long_description():
    fname = os.path.join(os.path.dirname(__file__), 'README.md')
    with open(fname) as f:
        return f.read()


# Package data: the built-in catalog, the configuration template and the
# test data files.
package_data = {PACKAGENAME: ['data/*.txt', 'tests/data/*',
                              PACKAGENAME + '.cfg']}

setup(name=PACKAGENAME,
      version=get_version(),
      description=DESCRIPTION,
      long_description=read_long_description(),
      long_description_content_type='text/markdown',
      author=AUTHOR,
      license=LICENSE,
      packages=[PACKAGENAME, PACKAGENAME + '.tests'],
      package_data=package_data,
      install_requires=['numpy', 'astropy'],
      extras_require={'test': ['pytest']},
      entry_points={'console_scripts': ['kbound = kbound.cli:main']},
      classifiers=[
          'Development Status :: 3 - Alpha',
          'Intended Audience :: Science/Research',
          'License :: OSI Approved :: BSD License',
          'Operating System :: OS Independent',
          'Programming Language :: Python :: 3',
          'Topic :: Scientific/Engineering :: Mathematics'],
      zip_safe=False)
