# Copyright 2026 The onlinemanip Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python access to the onlinemanip solver.

Instances are dicts in the CLI's JSON format (or JSON strings). Weights past
64 bits must be written as decimal strings inside instance dicts; the list
arguments of classify and the Partition helpers take ints of any size.
"""

import json

from . import _onlinemanip as _ext
from ._onlinemanip import (
    InvalidInstanceError,
    NoFastAlgorithmError,
    ParseError,
    ResourceLimitError,
    VerificationError,
)

__all__ = [
    "InvalidInstanceError",
    "NoFastAlgorithmError",
    "ParseError",
    "ResourceLimitError",
    "VerificationError",
    "classify",
    "digest",
    "eval_qbf",
    "fast_solve",
    "full_profile",
    "partition_bruteforce",
    "random_instance",
    "reduce_partition",
    "reduce_qbf",
    "solve",
    "validate",
    "winners",
]


def _text(instance):
    if isinstance(instance, str):
        return instance
    return json.dumps(instance)


def solve(instance, *, canonicalize=False, memoize=True, trace=False,
          node_budget=10_000_000):
    return json.loads(_ext.solve(_text(instance), canonicalize, memoize, trace,
                                 node_budget))


def fast_solve(instance):
    return json.loads(_ext.fast_solve(_text(instance)))


def winners(instance):
    return json.loads(_ext.winners(_text(instance)))


def full_profile(instance):
    return json.loads(_ext.full_profile(_text(instance)))


def validate(instance):
    return _ext.validate(_text(instance))


def digest(instance):
    return _ext.digest(_text(instance))


def classify(alpha):
    return _ext.classify([str(a) for a in alpha])


def partition_bruteforce(weights):
    return _ext.partition_bruteforce([str(w) for w in weights])


def eval_qbf(qbf):
    return _ext.eval_qbf(_text(qbf))


def reduce_partition(kind, weights, m):
    """kind is "partition-dwcm" or "partition-cowcm"."""
    return json.loads(_ext.reduce_partition(kind, [str(w) for w in weights], m))


def reduce_qbf(qbf):
    return json.loads(_ext.reduce_qbf(_text(qbf)))


def random_instance(seed, *, m=3, cast=1, pending=2, min_weight=1,
                    max_weight=1, rule=None):
    rule_text = json.dumps(rule or {"type": "plurality"})
    return json.loads(_ext.random_instance(seed, m, cast, pending, min_weight,
                                           max_weight, rule_text))
