from setuptools import setup, find_packages

with open('cslb/requirements.txt') as handle:
    requirements = [line.strip() for line in handle if line.strip() and not line.startswith('pytest')]

setup(name='counter_sample_lab', version='1.0', packages=find_packages(exclude=['tests', 'tests.*']),
      install_requires=requirements,
      entry_points={'console_scripts': ['cslb=cslb.run:main']})
