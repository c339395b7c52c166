#include "fastfood/serialize.hpp"

#include <fstream>

#include <json.hpp>

#include "fastfood/errors.hpp"

namespace fastfood {

using nlohmann::json;

namespace {

json spec_json(const KernelSpec& spec) {
    json j;
    if (const auto* rbf = std::get_if<RbfSpec>(&spec)) {
        j["kernel"] = "rbf";
        j["sigma"] = rbf->sigma;
    } else if (const auto* mat = std::get_if<MaternSpec>(&spec)) {
        j["kernel"] = "matern";
        j["sigma"] = mat->sigma;
        j["order"] = mat->order;
    } else if (const auto* dp = std::get_if<DotProductSpec>(&spec)) {
        j["kernel"] = "dotproduct";
        j["d"] = dp->coeffs.d;
        j["lambda"] = dp->coeffs.lambda;
    } else if (const auto* poly = std::get_if<DirectPolySpec>(&spec)) {
        j["kernel"] = "directpoly";
        j["coeffs"] = poly->coeffs;
    } else if (const auto* anc = std::get_if<AnchoredSpec>(&spec)) {
        j["kernel"] = "anchored";
        j["width"] = anc->width;
        j["spread"] = anc->spread;
    }
    return j;
}

KernelSpec spec_parse(const json& j) {
    const std::string kind = j.at("kernel").get<std::string>();
    if (kind == "rbf") return RbfSpec{j.at("sigma").get<double>()};
    if (kind == "matern")
        return MaternSpec{j.at("sigma").get<double>(), j.at("order").get<int>()};
    if (kind == "dotproduct") {
        DotProductSpec dp;
        dp.coeffs.d = j.at("d").get<int>();
        dp.coeffs.lambda = j.at("lambda").get<std::vector<double>>();
        return dp;
    }
    if (kind == "directpoly")
        return DirectPolySpec{j.at("coeffs").get<std::vector<double>>()};
    if (kind == "anchored")
        return AnchoredSpec{j.at("width").get<double>(), j.at("spread").get<double>()};
    throw data_error("spec_from_json: unknown kernel '" + kind + "'");
}

}  // namespace

std::string spec_to_json(const KernelSpec& spec) { return spec_json(spec).dump(); }

KernelSpec spec_from_json(const std::string& text) {
    return spec_parse(json::parse(text));
}

std::string transform_to_json(const FastfoodTransform& tf, bool include_arrays) {
    json j;
    j["format"] = "fastfood-transform";
    j["version"] = 1;
    j["master_seed"] = tf.master_seed;
    j["input_dim"] = tf.input_dim;
    j["n"] = tf.n;
    j["spec"] = spec_json(tf.spec);
    if (include_arrays) {
        json arr = json::array();
        for (const auto& blk : tf.blocks) {
            json b;
            b["b"] = blk.b;
            b["g"] = blk.g;
            b["s"] = blk.s;
            b["perm"] = blk.perm;
            arr.push_back(std::move(b));
        }
        j["blocks"] = std::move(arr);
    }
    return j.dump();
}

FastfoodTransform transform_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("format", "") != "fastfood-transform")
        throw data_error("transform_from_json: not a transform record");
    if (j.value("version", 0) != 1)
        throw data_error("transform_from_json: unsupported version");
    auto tf = FastfoodTransform::create(
        j.at("input_dim").get<size_t>(), j.at("n").get<size_t>(),
        spec_parse(j.at("spec")), j.at("master_seed").get<uint64_t>());
    if (j.contains("blocks")) {
        const auto& arr = j.at("blocks");
        if (arr.size() != tf.blocks.size())
            throw data_error("transform_from_json: block count mismatch");
        for (size_t k = 0; k < tf.blocks.size(); ++k) {
            const auto& b = arr[k];
            if (b.at("b").get<std::vector<double>>() != tf.blocks[k].b ||
                b.at("g").get<std::vector<double>>() != tf.blocks[k].g ||
                b.at("s").get<std::vector<double>>() != tf.blocks[k].s ||
                b.at("perm").get<std::vector<uint32_t>>() != tf.blocks[k].perm)
                throw data_error(
                    "transform_from_json: inlined arrays do not match the seeds");
        }
    }
    return tf;
}

void save_transform(const FastfoodTransform& tf, const std::string& path,
                    bool include_arrays) {
    std::ofstream out(path);
    if (!out) throw data_error("save_transform: cannot open " + path);
    out << transform_to_json(tf, include_arrays) << "\n";
    if (!out) throw data_error("save_transform: write failed for " + path);
}

FastfoodTransform load_transform(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("load_transform: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return transform_from_json(text);
}

}  // namespace fastfood
