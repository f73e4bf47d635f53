from pathlib import Path

from setuptools import setup, find_packages

# load long description
long_description = Path("README.md").read_text(encoding="utf-8")

# load version
main_ns = {}
exec(Path('version.py').read_text(), main_ns)

setup(
    name='photon-graviton',
    version=main_ns['__version__'],
    packages=find_packages(include=['photon_graviton', 'photon_graviton.*']),
    install_requires=[
        "numpy>=1.22",
        "pandas>=1.5",
        "scipy>=1.8",
        "tqdm>=4.64.1"
    ],
    extras_require={
        "tests": [
            "hypothesis>=6.50",
            "pytest>=7.0"
        ]
    },
    entry_points={
        "console_scripts": [
            "photon-graviton=photon_graviton.cli.main:main"
        ]
    },
    python_requires=">=3.9",
    author="Badr Ben m'barek",
    author_email='badr.benb@gmail.com',
    description='Photon-graviton conversion in a static magnetic field, checked on truncated Fock spaces',
    long_description=long_description,
    long_description_content_type="text/markdown",
    url='',
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
)
