import time


def pytest_sessionstart(session):
    session.starttime = time.time()
