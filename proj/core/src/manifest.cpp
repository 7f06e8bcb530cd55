#include "ifra/manifest.hpp"

#include <array>
#include <memory>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "ifra/errors.hpp"
#include "io_util.hpp"

namespace ifra {

std::string_view tool_version() { return IFRA_VERSION; }

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
        throw NumericError("sha256: digest computation failed");
    }
    std::string hex;
    hex.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(detail::read_file(path)); }

void RunManifest::add_input(const std::filesystem::path& path) {
    inputs.push_back({path.string(), sha256_file(path)});
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json in = nlohmann::ordered_json::array();
    for (const auto& i : inputs) in.push_back({{"path", i.path}, {"sha256", i.sha256}});
    return {{"command", command},
            {"tool_version", tool_version()},
            {"seed", seed},
            {"config", config},
            {"inputs", std::move(in)},
            {"outputs", outputs}};
}

}  // namespace ifra
