from setuptools import setup, find_packages


setup(
    name='ekrbound',
    description='Exact spectral and LP bounds for EKR sets of generators in Hermitian polar spaces',
    use_scm_version={
        "root": ".",
        "relative_to": __file__,
        "write_to": "src/ekrbound/_version.py",  # 自动生成版本文件
        "version_scheme": "post-release",
        "local_scheme": "no-local-version",  # 避免 +dirty 后缀
        "write_to_template": '__version__ = "{version}"',
        "fallback_version": "0.1.0",     # Git无标签时的默认版本
    },

    setup_requires=["setuptools_scm"],
    package_dir={"": "src"},  # 指定包根目录为src
    packages=find_packages(where="src"),
    python_requires='>=3.9',

    entry_points={
        'console_scripts': [
            'ekrb=ekrbound.cli:main',
        ],
    },
    install_requires=[
        'tqdm>=4.0.0',
        'pandas>=1.0.0',
        'numpy>=1.20.0',  # oracle 的 0/1 关系矩阵乘法
        'rich',
        'rich_argparse',
    ],

    extras_require={
        'test': [
            'pytest>=7.0.0',
        ],
    }
)
