#include "tacgrasp/nn/checkpoint.hpp"

#include <fstream>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::nn {

using nlohmann::json;

namespace {

json to_array(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd from_array(const json& j, Eigen::Index expected, const std::string& field) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != expected) {
    throw ConfigError("expected " + std::to_string(expected) + " numbers", field);
  }
  Eigen::VectorXd v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) v[i] = j[i].get<double>();
  return v;
}

}  // namespace

json checkpoint_to_json(const Checkpoint& c) {
  const MlpShape& s = c.net.shape();
  return {{"format", "tacgrasp-policy"},
          {"version", kCheckpointVersion},
          {"shape",
           {{"obs_dim", s.obs_dim},
            {"hidden", s.hidden},
            {"action_dim", s.action_dim},
            {"activation", s.activation == Activation::kTanh ? "tanh" : "identity"}}},
          {"params", to_array(c.net.params())},
          {"obs_norm",
           {{"mean", to_array(c.obs_norm.mean)},
            {"var", to_array(c.obs_norm.var)},
            {"count", c.obs_norm.count},
            {"clip", c.obs_norm.clip}}},
          {"step", c.step},
          {"metadata", c.metadata}};
}

Checkpoint checkpoint_from_json(const json& doc) {
  try {
    if (doc.value("format", "") != "tacgrasp-policy") {
      throw ConfigError("not a policy checkpoint", "format");
    }
    if (doc.value("version", -1) != kCheckpointVersion) {
      throw ConfigError("unsupported checkpoint version", "version");
    }
    const json& js = doc.at("shape");
    MlpShape shape;
    shape.obs_dim = js.at("obs_dim").get<int>();
    shape.hidden = js.at("hidden").get<std::vector<int>>();
    shape.action_dim = js.at("action_dim").get<int>();
    const std::string act = js.value("activation", "tanh");
    if (act != "tanh" && act != "identity") throw ConfigError("unknown activation", "shape.activation");
    shape.activation = act == "tanh" ? Activation::kTanh : Activation::kIdentity;

    Checkpoint c;
    try {
      c.net = ActorCritic(shape);
    } catch (const ArgumentError& e) {
      throw ConfigError(e.what(), "shape");
    }
    c.net.params() = from_array(doc.at("params"), c.net.param_count(), "params");
    const json& jn = doc.at("obs_norm");
    c.obs_norm = RunningMeanStd(shape.obs_dim);
    c.obs_norm.mean = from_array(jn.at("mean"), shape.obs_dim, "obs_norm.mean");
    c.obs_norm.var = from_array(jn.at("var"), shape.obs_dim, "obs_norm.var");
    c.obs_norm.count = jn.at("count").get<double>();
    c.obs_norm.clip = jn.value("clip", c.obs_norm.clip);
    c.step = doc.value("step", 0LL);
    c.metadata = doc.value("metadata", json::object());
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what(), "checkpoint");
  }
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path, "checkpoint");
  out << checkpoint_to_json(ckpt).dump() << '\n';
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path, "checkpoint");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what(), "checkpoint");
  }
  return checkpoint_from_json(doc);
}

}  // namespace tacgrasp::nn
