#pragma once

#include <vector>

#include "piecenet/common.hpp"

namespace piecenet {

enum class EncodingKind { Scalar, OneHot, Embedding };

// The categorical map z that lifts a region index into the augmentation
// coordinates appended to the spatial input. Scalar and one-hot variants are
// fixed; the embedding matrix is trainable (owned by the parameter vector
// during optimization, this struct only carries its initial value).
struct EncodingScheme {
  EncodingKind kind = EncodingKind::Scalar;
  int regions = 1;   // L + 1
  Vector labels;     // Scalar: gamma_0 .. gamma_L
  int embed_dim = 0; // Embedding: D
  Matrix embed;      // Embedding: D x (L+1)

  int dim_z() const {
    switch (kind) {
      case EncodingKind::Scalar: return 1;
      case EncodingKind::OneHot: return regions;
      case EncodingKind::Embedding: return embed_dim;
    }
    return 0;
  }

  static EncodingScheme scalar(Vector labels);
  static EncodingScheme scalar_nominal(int regions);  // gamma_l = l
  static EncodingScheme one_hot(int regions);
  static EncodingScheme embedding(int regions, int embed_dim, uint64_t seed);
  static EncodingScheme embedding_with(Matrix e);
};

// Entries i.i.d. uniform on [-1, 1]; deterministic per seed.
Matrix embedding_init(int embed_dim, int num_interfaces, uint64_t seed);

// Augmentation vector for a one-hot delta (throws InvalidCategoryError if
// delta is not a canonical basis vector of the right length).
Vector encode(const EncodingScheme& scheme, const Vector& delta);
Vector encode_region(const EncodingScheme& scheme, int region);

// Scalar scheme built from per-region averages, optionally normalized by the
// largest magnitude. Throws DegenerateLabelsError when the averages are all
// zero or not pairwise distinct.
EncodingScheme mean_labels(const std::vector<double>& averages, bool normalize);

}  // namespace piecenet
