#include "trpnet/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <stdexcept>

namespace trpnet {

std::string git_blob_sha1(std::string_view content) {
    const std::string framed =
        "blob " + std::to_string(content.size()) + '\0' + std::string(content);

    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(framed.data(), framed.size(), digest.data(), &len,
                   EVP_sha1(), nullptr) != 1) {
        throw std::runtime_error("SHA-1 digest failed");
    }

    std::string hex(2 * len, '0');
    static const char* alphabet = "0123456789abcdef";
    for (unsigned int i = 0; i < len; ++i) {
        hex[2 * i] = alphabet[digest[i] >> 4];
        hex[2 * i + 1] = alphabet[digest[i] & 0xf];
    }
    return hex;
}

} // namespace trpnet
