from setuptools import setup, find_packages

setup(
    name="trifst",
    version="1.0.0",
    packages=find_packages(exclude=["examples", "examples.*"]),
    package_data={"trifst": ["config/*.yaml"]},
    install_requires=[
        line.split('#')[0].strip()
        for line in open('requirements.txt').readlines()
        if line.split('#')[0].strip() and 'pytest' not in line
    ],
    extras_require={"test": ["pytest==8.3.4"]},
    entry_points={"console_scripts": ["trifst=trifst.cli:run"]},
    python_requires='>=3.9',
)
