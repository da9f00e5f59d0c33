from __future__ import absolute_import
from __future__ import unicode_literals

import logging
from threading import Semaphore
from threading import Thread

from six.moves import _thread as thread
from six.moves.queue import Empty
from six.moves.queue import Queue

from .cli.signals import ShutdownException
from .config import parallel_limit_setting


log = logging.getLogger(__name__)

STOP = object()


class State(object):
    """
    Holds the state of a partially-complete parallel operation.

    state.started:   indices of tasks being processed
    state.finished:  indices of tasks which have been processed
    state.failed:    indices of tasks which raised
    """
    def __init__(self, count):
        self.count = count

        self.started = set()
        self.finished = set()
        self.failed = set()

    def is_done(self):
        return len(self.finished) + len(self.failed) >= self.count

    def pending(self):
        return sorted(set(range(self.count)) - self.started - self.finished - self.failed)


def resolve_workers(workers=None):
    if workers is None:
        return parallel_limit_setting()
    return max(1, workers)


def parallel_execute(objects, func, workers=None):
    """Runs func on every object with at most `workers` threads at a time.

    Returns the results in the order of `objects`. When any call raised,
    the exception of the lowest failing index is re-raised after all tasks
    have finished.
    """
    objects = list(objects)
    results = [None] * len(objects)
    errors = {}

    for index, result, exception in parallel_execute_iter(objects, func, resolve_workers(workers)):
        if exception is None:
            results[index] = result
        else:
            errors[index] = exception

    if errors:
        raise errors[min(errors)]
    return results


def parallel_execute_iter(objects, func, limit):
    """
    Runs func on objects in parallel.

    Returns an iterator of tuples which look like:

    # if func returned normally when run on object
    (index, result, None)

    # if func raised an exception when run on object
    (index, None, exception)
    """
    if not objects:
        return

    limiter = Semaphore(limit)
    results = Queue()
    state = State(len(objects))

    while True:
        feed_queue(objects, func, results, state, limiter)

        try:
            event = results.get(timeout=0.1)
        except Empty:
            continue
        # the interpreter is shutting down under us
        except thread.error:
            raise ShutdownException()

        if event is STOP:
            break

        index, _, exception = event
        if exception is None:
            log.debug('Finished task {}'.format(index))
            state.finished.add(index)
        else:
            log.debug('Failed task {}: {}'.format(index, exception))
            state.failed.add(index)

        yield event


def producer(index, obj, func, results, limiter):
    """
    The entry point for a producer thread which runs func on a single object.
    Places a tuple on the results queue once func has either returned or raised.
    """
    with limiter:
        try:
            result = func(obj)
            results.put((index, result, None))
        except Exception as e:
            results.put((index, None, e))


def feed_queue(objects, func, results, state, limiter):
    for index in state.pending():
        t = Thread(target=producer, args=(index, objects[index], func, results, limiter))
        t.daemon = True
        t.start()
        state.started.add(index)

    if state.is_done():
        results.put(STOP)
