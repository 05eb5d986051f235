#
# monadic_bench setuptools script
#
from setuptools import setup, find_packages


def get_version():
    """
    Get version number from the monadic_bench module.
    """
    import os
    import sys

    sys.path.append(os.path.abspath('monadic_bench'))
    version = "1.0.0"
    sys.path.pop()

    return version


def get_requirements():
    requirements = []
    with open("requirements.txt", "r") as file:
        for line in file:
            requirements.append(line)
    return requirements


setup(
    # Module name
    name='monadic_bench',

    # Version
    version=get_version(),

    description='A workbench for monadic categorial grammars: analysis, '
                'ranking and training',

    # Packages to include
    packages=find_packages(include=('monadic_bench', 'monadic_bench.*')),

    # Notation grammars and sample data
    package_data={
        'monadic_bench.core': ['grammars/*.lark'],
        'monadic_bench.examples': ['data/*'],
    },

    # List of dependencies
    install_requires=get_requirements(),

    entry_points={
        'console_scripts': [
            'monadic-bench=monadic_bench.cli:main',
        ],
    },

    extras_require={
        'docs': [
            'sphinx>=1.5, !=1.7.3',
            'sphinx_rtd_theme',
        ],
        'dev': [
            'flake8>=3',
            'pytest',
            'pytest-cov',
        ],
    },
)
