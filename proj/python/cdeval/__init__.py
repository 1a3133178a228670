# Copyright 2026 The cdeval Authors.
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

"""Score community detection against a text classifier of the members' messages."""

import json

from ._core import (
    ConfigError,
    DataError,
    Error,
    Graph,
    InvalidArgument,
    ParseError,
    agreement_precision,
    binned_agreement,
    coverage,
    dendrogram,
    detect,
    detect_all,
    edge_fscore,
    eigencentrality,
    f_beta,
    generate_synthetic,
    hash_embed,
    ingest,
    load_config,
    map_equation,
    modularity,
    quantile_split,
    synth,
    sweep,
    tokenize,
    truncate_partition,
    user_entropy,
)
from ._core import evaluate as _evaluate


def evaluate(config, out=".", overrides=()):
    """Run evaluate and return the decoded per-entry reports."""
    return [json.loads(r) for r in _evaluate(config, out, list(overrides))]


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
