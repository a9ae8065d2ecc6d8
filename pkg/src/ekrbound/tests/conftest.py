# -*- coding: utf-8 -*-


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: explicit H(5,4) construction with 891x891 matrix products")
