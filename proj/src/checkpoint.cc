// Copyright 2026 The RNN-EM Tagger Authors.
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

#include "rnnem/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "json.hpp"

namespace rnnem {

namespace {

using nlohmann::json;

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void PutU64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void PutTensor(std::string& out, const Tensor& t) {
  for (double v : t.values()) PutU64(out, std::bit_cast<std::uint64_t>(v));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view Take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw FormatError(std::string("checkpoint truncated while reading ") + what);
    }
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint64_t U64(const char* what) {
    auto s = Take(8, what);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[i]);
    return v;
  }
  std::uint32_t U32(const char* what) {
    auto s = Take(4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[i]);
    return v;
  }
  void FillTensor(Tensor& t, const char* what) {
    for (double& v : t.values()) v = std::bit_cast<double>(U64(what));
  }
  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

json DimsToJson(const TaggerDims& d) {
  return json{{"vocab_size", d.vocab_size}, {"embed_dim", d.embed_dim},
              {"hidden", d.hidden},         {"labels", d.labels},
              {"slot_dim", d.slot_dim},     {"slot_count", d.slot_count},
              {"window", d.window}};
}

TaggerDims DimsFromJson(const json& j) {
  TaggerDims d;
  d.vocab_size = j.at("vocab_size").get<std::size_t>();
  d.embed_dim = j.at("embed_dim").get<std::size_t>();
  d.hidden = j.at("hidden").get<std::size_t>();
  d.labels = j.at("labels").get<std::size_t>();
  d.slot_dim = j.at("slot_dim").get<std::size_t>();
  d.slot_count = j.at("slot_count").get<std::size_t>();
  d.window = j.at("window").get<std::size_t>();
  return d;
}

std::vector<const Tensor*> OptimizerTensors(const OptimizerState& state) {
  std::vector<const Tensor*> out;
  if (const auto* ada = std::get_if<AdaDeltaState>(&state)) {
    for (const Tensor& t : ada->mean_sq_grad) out.push_back(&t);
    for (const Tensor& t : ada->mean_sq_delta) out.push_back(&t);
  }
  return out;
}

}  // namespace

std::string SerializeCheckpoint(const Checkpoint& ckpt) {
  ckpt.model.Validate();
  json header;
  header["format_version"] = kCheckpointVersion;
  header["cell_kind"] = std::string(CellKindName(ckpt.model.kind));
  header["dims"] = DimsToJson(ckpt.model.dims);
  // Stored as raw bits so the value survives the text header exactly.
  header["memory_init_bits"] =
      std::bit_cast<std::uint64_t>(ckpt.model.memory_init);
  header["word_vocab"] = ckpt.word_vocab.tokens();
  header["label_vocab"] = ckpt.label_vocab.tokens();
  header["config"] = ckpt.config_text;
  header["epochs_completed"] = ckpt.epochs_completed;

  json tensors = json::array();
  const auto names = ckpt.model.params.Names();
  const auto values = ckpt.model.params.Tensors();
  for (std::size_t i = 0; i < names.size(); ++i) {
    tensors.push_back({{"name", names[i]},
                       {"rows", values[i]->rows()},
                       {"cols", values[i]->cols()}});
  }
  header["tensors"] = tensors;

  json opt;
  opt["kind"] = std::string(OptimizerName(ckpt.optimizer));
  if (const auto* ada = std::get_if<AdaDeltaState>(&ckpt.optimizer)) {
    opt["rho_bits"] = std::bit_cast<std::uint64_t>(ada->rho);
    opt["eps_bits"] = std::bit_cast<std::uint64_t>(ada->eps);
    opt["accumulators"] = ada->mean_sq_grad.size();
  } else {
    opt["learning_rate_bits"] = std::bit_cast<std::uint64_t>(
        std::get<SgdState>(ckpt.optimizer).learning_rate);
  }
  header["optimizer"] = opt;

  const std::string header_text = header.dump();
  std::string out(kCheckpointMagic);
  PutU32(out, kCheckpointVersion);
  PutU64(out, header_text.size());
  out += header_text;
  for (const Tensor* t : values) PutTensor(out, *t);
  for (const Tensor* t : OptimizerTensors(ckpt.optimizer)) PutTensor(out, *t);
  return out;
}

static Checkpoint DeserializeImpl(std::string_view bytes) {
  Reader reader(bytes);
  if (reader.Take(kCheckpointMagic.size(), "magic") != kCheckpointMagic) {
    throw FormatError("not a checkpoint file (bad magic bytes)");
  }
  const std::uint32_t version = reader.U32("version");
  if (version != kCheckpointVersion) {
    throw FormatError("checkpoint format version " + std::to_string(version) +
                      " is not supported (expected " +
                      std::to_string(kCheckpointVersion) + ")");
  }
  const std::uint64_t header_len = reader.U64("header length");
  if (header_len > bytes.size()) {
    throw FormatError("checkpoint truncated: header length exceeds file size");
  }
  json header;
  try {
    header = json::parse(reader.Take(header_len, "header"));
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint header is not valid JSON: ") +
                      e.what());
  }

  Checkpoint ckpt;
  try {
    ckpt.model.kind = ParseCellKind(header.at("cell_kind").get<std::string>());
    ckpt.model.dims = DimsFromJson(header.at("dims"));
    ckpt.model.memory_init =
        std::bit_cast<double>(header.at("memory_init_bits").get<std::uint64_t>());
    ckpt.word_vocab =
        Vocabulary(header.at("word_vocab").get<std::vector<std::string>>());
    ckpt.label_vocab =
        Vocabulary(header.at("label_vocab").get<std::vector<std::string>>());
    ckpt.config_text = header.at("config").get<std::string>();
    ckpt.epochs_completed = header.at("epochs_completed").get<std::size_t>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint header incomplete: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("checkpoint header invalid: ") + e.what());
  }
  const TaggerDims& dims = ckpt.model.dims;
  if (ckpt.word_vocab.size() != dims.vocab_size ||
      ckpt.label_vocab.size() != dims.labels) {
    throw FormatError("checkpoint vocabularies do not match recorded dims");
  }

  // Build a zero model of the recorded shape and check the tensor table.
  ckpt.model.params.embeddings = Tensor(dims.vocab_size, dims.embed_dim);
  ckpt.model.params.cell = ZeroParams(ckpt.model.kind, dims.cell_dims());
  ckpt.model.params.output_weight = Tensor(dims.labels, dims.hidden);
  ckpt.model.params.output_bias = Tensor::Vector(dims.labels);
  const auto names = ckpt.model.params.Names();
  const auto tensors = ckpt.model.params.Tensors();
  const json& table = header.at("tensors");
  if (!table.is_array() || table.size() != names.size()) {
    throw FormatError("checkpoint tensor table does not match the cell kind");
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    const json& entry = table[i];
    if (entry.at("name").get<std::string>() != names[i] ||
        entry.at("rows").get<std::size_t>() != tensors[i]->rows() ||
        entry.at("cols").get<std::size_t>() != tensors[i]->cols()) {
      throw FormatError("checkpoint tensor " + std::to_string(i) + " (" +
                        entry.dump() + ") is inconsistent with dims, expected " +
                        names[i] + " " + tensors[i]->ShapeString());
    }
    reader.FillTensor(*tensors[i], "tensor data");
  }

  const json& opt = header.at("optimizer");
  const std::string kind = opt.at("kind").get<std::string>();
  if (kind == "adadelta") {
    std::vector<const Tensor*> shapes(tensors.begin(), tensors.end());
    AdaDeltaState ada = AdaDeltaState::ForParams(
        shapes, std::bit_cast<double>(opt.at("rho_bits").get<std::uint64_t>()),
        std::bit_cast<double>(opt.at("eps_bits").get<std::uint64_t>()));
    if (opt.at("accumulators").get<std::size_t>() != tensors.size()) {
      throw FormatError("optimizer accumulator count does not match model");
    }
    for (Tensor& t : ada.mean_sq_grad) reader.FillTensor(t, "optimizer state");
    for (Tensor& t : ada.mean_sq_delta) reader.FillTensor(t, "optimizer state");
    ckpt.optimizer = std::move(ada);
  } else if (kind == "sgd") {
    ckpt.optimizer = SgdState{std::bit_cast<double>(
        opt.at("learning_rate_bits").get<std::uint64_t>())};
  } else {
    throw FormatError("unknown optimizer kind '" + kind + "' in checkpoint");
  }
  if (!reader.AtEnd()) {
    throw FormatError("checkpoint has trailing bytes after the last tensor");
  }
  return ckpt;
}

Checkpoint DeserializeCheckpoint(std::string_view bytes) {
  try {
    return DeserializeImpl(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("checkpoint header malformed: ") + e.what());
  }
}

void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  const std::string bytes = SerializeCheckpoint(ckpt);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing checkpoint " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return DeserializeCheckpoint(bytes);
}

}  // namespace rnnem
