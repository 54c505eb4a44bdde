from setuptools import setup

setup(
    name='opgraph',
    version='0.1',
    packages=['opgraph', 'opgraph.config', 'opgraph.lib', 'opgraph.models', 'opgraph.experiment'],
    install_requires=['numpy>=1.17', 'PyYAML>=5.1', 'Pint>=0.9'],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['opgraph=opgraph.cli:main']},
    license='MIT',
    author='Aquiles',
    author_email='aquiles@uetke.com',
    description='Operator systems, quantum channels and the operator graphs that connect them'
)
