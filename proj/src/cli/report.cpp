#include "repfam/report.hpp"

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "repfam/errors.hpp"

namespace repfam {

namespace {

void flatten(const Json& value, const std::string& prefix, std::ostringstream& out) {
    if (value.is_object() && !value.empty()) {
        for (const auto& [key, child] : value.items()) {
            flatten(child, prefix.empty() ? key : prefix + "." + key, out);
        }
        return;
    }
    if (value.is_array() && !value.empty() && (value.front().is_object() || value.front().is_array())) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            flatten(value[i], prefix + "." + std::to_string(i), out);
        }
        return;
    }
    out << prefix << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

}  // namespace

Json RunReport::to_json() const {
    Json out;
    out["subcommand"] = subcommand;
    out["input_digest"] = input_digest ? Json(*input_digest) : Json(nullptr);
    out["params"] = params;
    out["answer"] = answer;
    out["stats"] = stats;
    out["verification"] = verification ? repfam::to_json(*verification) : Json(nullptr);
    out["timings"] = timings;
    return out;
}

std::string RunReport::to_text() const {
    std::ostringstream out;
    flatten(to_json(), "", out);
    return out.str();
}

std::string sha256_hex(const std::string& bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path.string());
    }
    std::ostringstream bytes;
    bytes << in.rdbuf();
    return sha256_hex(bytes.str());
}

Json to_json(const VerificationSummary& summary) {
    return Json{{"passed", summary.passed()},
                {"checks", summary.checks},
                {"failures", summary.failures},
                {"messages", summary.messages}};
}

Json to_json(const FilterStats& stats) {
    return Json{{"calls", stats.calls},
                {"filtered", stats.filtered},
                {"input_members", stats.input_members},
                {"output_members", stats.output_members},
                {"max_input", stats.max_input},
                {"max_output", stats.max_output}};
}

Json to_json(const SeparatorParams& params) {
    return Json{{"n", params.n}, {"k", params.k}, {"p", params.p}, {"c", params.c}};
}

Json to_json(const SeparatorInfo& info) {
    return Json{{"n", info.params.n},
                {"k", info.params.k},
                {"p", info.params.p},
                {"c", info.params.c},
                {"sets", info.sets},
                {"seed", info.seed},
                {"attempts", info.attempts},
                {"verified", std::string(to_string(info.verified))}};
}

Json without_timings(Json report) {
    report.erase("timings");
    return report;
}

}  // namespace repfam
