#include "piecenet/encoding.hpp"

#include <cmath>

namespace piecenet {

namespace {

void check_labels_distinct(const Vector& labels) {
  for (int i = 0; i < labels.size(); ++i)
    for (int j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw DegenerateLabelsError("scalar labels must be pairwise distinct");
}

}  // namespace

EncodingScheme EncodingScheme::scalar(Vector labels) {
  if (labels.size() < 1) throw DegenerateLabelsError("scalar scheme needs at least one label");
  check_labels_distinct(labels);
  EncodingScheme s;
  s.kind = EncodingKind::Scalar;
  s.regions = static_cast<int>(labels.size());
  s.labels = std::move(labels);
  return s;
}

EncodingScheme EncodingScheme::scalar_nominal(int regions) {
  Vector labels(regions);
  for (int l = 0; l < regions; ++l) labels[l] = static_cast<double>(l);
  return scalar(std::move(labels));
}

EncodingScheme EncodingScheme::one_hot(int regions) {
  EncodingScheme s;
  s.kind = EncodingKind::OneHot;
  s.regions = regions;
  return s;
}

EncodingScheme EncodingScheme::embedding(int regions, int embed_dim, uint64_t seed) {
  return embedding_with(embedding_init(embed_dim, regions - 1, seed));
}

EncodingScheme EncodingScheme::embedding_with(Matrix e) {
  EncodingScheme s;
  s.kind = EncodingKind::Embedding;
  s.regions = static_cast<int>(e.cols());
  s.embed_dim = static_cast<int>(e.rows());
  s.embed = std::move(e);
  return s;
}

Matrix embedding_init(int embed_dim, int num_interfaces, uint64_t seed) {
  const int regions = num_interfaces + 1;
  if (embed_dim < 1 || embed_dim > regions)
    throw DimensionError("embedding dimension must satisfy 1 <= D <= L+1");
  Rng rng(seed);
  Matrix e(embed_dim, regions);
  for (int q = 0; q < regions; ++q)
    for (int p = 0; p < embed_dim; ++p) e(p, q) = rng.uniform(-1.0, 1.0);
  return e;
}

Vector encode(const EncodingScheme& scheme, const Vector& delta) {
  if (delta.size() != scheme.regions)
    throw InvalidCategoryError("one-hot vector has the wrong length");
  int region = -1;
  for (int i = 0; i < delta.size(); ++i) {
    if (delta[i] == 1.0) {
      if (region >= 0) throw InvalidCategoryError("vector is not one-hot");
      region = i;
    } else if (delta[i] != 0.0) {
      throw InvalidCategoryError("vector is not one-hot");
    }
  }
  if (region < 0) throw InvalidCategoryError("vector is not one-hot");
  return encode_region(scheme, region);
}

Vector encode_region(const EncodingScheme& scheme, int region) {
  if (region < 0 || region >= scheme.regions)
    throw InvalidCategoryError("region index out of range");
  switch (scheme.kind) {
    case EncodingKind::Scalar: {
      Vector z(1);
      z[0] = scheme.labels[region];
      return z;
    }
    case EncodingKind::OneHot: {
      Vector z = Vector::Zero(scheme.regions);
      z[region] = 1.0;
      return z;
    }
    case EncodingKind::Embedding: return scheme.embed.col(region);
  }
  throw InvalidCategoryError("unknown encoding kind");
}

EncodingScheme mean_labels(const std::vector<double>& averages, bool normalize) {
  if (averages.empty()) throw DegenerateLabelsError("no region averages given");
  double max_mag = 0.0;
  for (double a : averages) max_mag = std::max(max_mag, std::abs(a));
  if (max_mag == 0.0) throw DegenerateLabelsError("all region averages are zero");
  Vector labels(static_cast<int>(averages.size()));
  for (size_t l = 0; l < averages.size(); ++l)
    labels[static_cast<int>(l)] = normalize ? averages[l] / max_mag : averages[l];
  check_labels_distinct(labels);
  return EncodingScheme::scalar(std::move(labels));
}

}  // namespace piecenet
