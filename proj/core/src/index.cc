// Copyright 2026 The Intertext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "intertext/index.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "binary_io.h"
#include "intertext/error.h"
#include "json.hpp"

namespace intertext::index {
namespace {

// Squared L2 norm in double, ascending index.
double squared_norm(std::span<const float> v) {
  double sum = 0.0;
  for (float x : v) sum += static_cast<double>(x) * x;
  return sum;
}

std::vector<double> unit_query(std::span<const float> query, std::size_t dim) {
  if (query.size() != dim) {
    throw Error("query has " + std::to_string(query.size()) +
                " components, index dim is " + std::to_string(dim));
  }
  const double norm = std::sqrt(squared_norm(query));
  if (norm == 0.0) throw Error("query is the zero vector");
  std::vector<double> q(dim);
  for (std::size_t i = 0; i < dim; ++i) q[i] = query[i] / norm;
  return q;
}

double dot(std::span<const float> row, const std::vector<double>& q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) acc += row[i] * q[i];
  return acc;
}

// Higher score first, then lower row.
struct Better {
  bool operator()(const std::pair<double, std::size_t>& a,
                  const std::pair<double, std::size_t>& b) const {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  }
};

}  // namespace

double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw Error("cosine: dimension mismatch");
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<double>(a[i]) * b[i];
    aa += static_cast<double>(a[i]) * a[i];
    bb += static_cast<double>(b[i]) * b[i];
  }
  if (aa == 0.0 || bb == 0.0) throw Error("cosine: zero vector");
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

std::vector<double> VectorIndex::scores(std::span<const float> query) const {
  const std::vector<double> q = unit_query(query, rows_.cols());
  std::vector<double> out(size());
  for (std::size_t r = 0; r < size(); ++r) out[r] = dot(rows_.row(r), q);
  return out;
}

std::vector<Hit> VectorIndex::top_k(std::span<const float> query,
                                    std::size_t k) const {
  if (k == 0) throw Error("top_k: k must be at least 1");
  const std::vector<double> q = unit_query(query, rows_.cols());
  const std::size_t keep = std::min(k, size());

  // Bounded heap whose front is the worst kept candidate.
  std::vector<std::pair<double, std::size_t>> heap;
  heap.reserve(keep + 1);
  Better better;
  for (std::size_t r = 0; r < size(); ++r) {
    std::pair<double, std::size_t> candidate{dot(rows_.row(r), q), r};
    if (heap.size() < keep) {
      heap.push_back(candidate);
      std::push_heap(heap.begin(), heap.end(), better);
    } else if (better(candidate, heap.front())) {
      std::pop_heap(heap.begin(), heap.end(), better);
      heap.back() = candidate;
      std::push_heap(heap.begin(), heap.end(), better);
    }
  }
  std::sort(heap.begin(), heap.end(), better);

  std::vector<Hit> hits;
  hits.reserve(heap.size());
  for (std::size_t rank = 0; rank < heap.size(); ++rank) {
    hits.push_back({ids_[heap[rank].second], heap[rank].first, rank,
                    heap[rank].second});
  }
  return hits;
}

namespace {

void check_ids(const std::vector<std::string>& ids, const Matrix& vectors) {
  if (ids.size() != vectors.rows()) {
    throw Error("index build: " + std::to_string(ids.size()) + " ids for " +
                std::to_string(vectors.rows()) + " vectors");
  }
  std::unordered_set<std::string_view> seen;
  for (const std::string& id : ids) {
    if (!seen.insert(id).second) throw Error("index build: duplicate id \"" + id + "\"");
  }
}

}  // namespace

VectorIndex VectorIndex::adopt_normalized(std::vector<std::string> ids,
                                          Matrix rows) {
  check_ids(ids, rows);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    if (std::abs(std::sqrt(squared_norm(rows.row(r))) - 1.0) > kNormTolerance) {
      throw FormatError("index: row \"" + ids[r] + "\" is not unit length");
    }
  }
  VectorIndex index;
  index.ids_ = std::move(ids);
  index.rows_ = std::move(rows);
  index.normalized_ = true;
  return index;
}

VectorIndex build(std::vector<std::string> ids, const Matrix& vectors) {
  check_ids(ids, vectors);
  VectorIndex index;
  index.rows_ = Matrix(vectors.rows(), vectors.cols());
  for (std::size_t r = 0; r < vectors.rows(); ++r) {
    auto in = vectors.row(r);
    const double norm = std::sqrt(squared_norm(in));
    if (norm == 0.0 || !std::isfinite(norm)) {
      throw Error("index build: vector \"" + ids[r] + "\" has zero or non-finite norm");
    }
    auto out = index.rows_.row(r);
    for (std::size_t i = 0; i < in.size(); ++i) {
      out[i] = static_cast<float>(in[i] / norm);
    }
  }
  index.ids_ = std::move(ids);
  index.normalized_ = true;
  return index;
}

std::string encode_index(const VectorIndex& index) {
  io::SembContents c;
  c.version = io::kSembIndexVersion;
  c.flags = index.normalized() ? io::kSembFlagNormalized : 0;
  c.dim = index.dim();
  c.ids = index.ids();
  auto data = index.rows().data();
  c.vectors.assign(data.begin(), data.end());
  return io::encode_semb(c);
}

VectorIndex decode_index(std::span<const char> bytes) {
  static constexpr std::uint32_t kAccepted[] = {io::kSembStoreVersion,
                                                io::kSembIndexVersion};
  io::SembContents c = io::decode_semb(bytes, "index", kAccepted);
  Matrix vectors(c.ids.size(), c.dim);
  std::copy(c.vectors.begin(), c.vectors.end(), vectors.data().begin());
  if (c.version == io::kSembIndexVersion && (c.flags & io::kSembFlagNormalized)) {
    // Rows are already unit length; keep them bit-for-bit.
    return VectorIndex::adopt_normalized(std::move(c.ids), std::move(vectors));
  }
  return build(std::move(c.ids), vectors);
}

void save_index(const VectorIndex& index, const std::filesystem::path& path) {
  io::write_file(path, encode_index(index));
}

VectorIndex load_index(const std::filesystem::path& path) {
  std::vector<char> bytes = io::read_file(path);
  try {
    return decode_index(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string hits_json(std::span<const Hit> hits) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Hit& h : hits) {
    nlohmann::ordered_json obj;
    obj["id"] = h.id;
    obj["score"] = h.score;
    obj["rank"] = h.rank;
    arr.push_back(std::move(obj));
  }
  return arr.dump();
}

}  // namespace intertext::index
