# Copyright 2026 The boostfreq Authors
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

"""Word frequencies normalized by semantic neighbors, for authorship attribution.

A word's enhanced frequency in a document is its count divided by the count
of the word plus its nearest semantic neighbors, instead of by the document
length.
"""

from ._core import (
    DataError,
    DocTermMatrix,
    Document,
    FrequencyMatrix,
    NeighborTable,
    ResultGrid,
    UsageError,
    VectorModel,
    build_dtm,
    classical_frequencies,
    distance,
    enhanced_frequencies,
    enhanced_frequencies_radius,
    evaluate,
    f1_macro,
    grid_search,
    grid_search_radius,
    neighbor_table,
    read_corpus,
    tokenize,
    train_vectors,
    write_results_csv,
)

__all__ = [
    "DataError",
    "DocTermMatrix",
    "Document",
    "FrequencyMatrix",
    "NeighborTable",
    "ResultGrid",
    "UsageError",
    "VectorModel",
    "build_dtm",
    "classical_frequencies",
    "distance",
    "enhanced_frequencies",
    "enhanced_frequencies_radius",
    "evaluate",
    "f1_macro",
    "grid_search",
    "grid_search_radius",
    "labels",
    "neighbor_table",
    "read_corpus",
    "tokenize",
    "train_vectors",
    "write_results_csv",
]

__version__ = "0.1.0"


def labels(documents):
    """(id, author) pairs for the grid and evaluation functions."""
    return [(d.id, d.author) for d in documents]
