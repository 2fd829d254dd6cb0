from datetime import date, timedelta

import numpy as np
import pytest

from levelcross.synthetic import GeneratorSpec, generate


def make_price_file(path, kind="white", n=400, sigma=0.01, h=None, df=None, seed=0,
                    start_price=100.0):
    """Write a date,price CSV whose log returns follow the requested process."""
    y = generate(GeneratorSpec(kind=kind, n=n, sigma=sigma, h=h, df=df, seed=seed))
    log_prices = np.log(start_price) + np.concatenate([[0.0], np.cumsum(y.values)])
    prices = np.exp(log_prices)
    d0 = date(2005, 1, 3)
    lines = ["date,price"]
    lines += [f"{d0 + timedelta(days=i)},{float(p)!r}" for i, p in enumerate(prices)]
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def price_file_factory(tmp_path):
    def factory(name, **kwargs):
        return make_price_file(tmp_path / f"{name}.csv", **kwargs)

    return factory
