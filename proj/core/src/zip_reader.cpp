#include "zip_reader.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <vector>

namespace psmine::zip {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralDirSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;

std::uint16_t rd16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t rd32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::string inflate_raw(const unsigned char* data, std::size_t compressed_size,
                        std::size_t uncompressed_size) {
    std::string out(uncompressed_size, '\0');
    z_stream zs{};
    // Negative window bits: raw deflate stream, no zlib header.
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK)
        throw ZipError("inflateInit2 failed");
    zs.next_in = const_cast<unsigned char*>(data);
    zs.avail_in = static_cast<uInt>(compressed_size);
    zs.next_out = reinterpret_cast<unsigned char*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || zs.total_out != uncompressed_size)
        throw ZipError("corrupt deflate stream in zip entry");
    return out;
}

}  // namespace

bool looks_like_zip(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    unsigned char magic[4]{};
    in.read(reinterpret_cast<char*>(magic), 4);
    return in.gcount() == 4 && rd32(magic) == kLocalHeaderSig;
}

std::map<std::string, std::string> read_zip_archive(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ZipError("cannot open zip archive " + path.string());
    std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>()};
    if (bytes.size() < 22) throw ZipError("not a zip archive: " + path.string());

    // End-of-central-directory record: scan backwards past a possible comment.
    std::size_t eocd = std::string::npos;
    const std::size_t scan_limit = bytes.size() >= 22 + 65535 ? bytes.size() - 22 - 65535 : 0;
    for (std::size_t i = bytes.size() - 22; ; --i) {
        if (rd32(&bytes[i]) == kEndOfCentralDirSig) {
            eocd = i;
            break;
        }
        if (i == scan_limit) break;
    }
    if (eocd == std::string::npos)
        throw ZipError("zip central directory not found in " + path.string());

    const std::uint16_t entry_count = rd16(&bytes[eocd + 10]);
    const std::uint32_t cd_offset = rd32(&bytes[eocd + 16]);

    std::map<std::string, std::string> files;
    std::size_t pos = cd_offset;
    for (std::uint16_t e = 0; e < entry_count; ++e) {
        if (pos + 46 > bytes.size() || rd32(&bytes[pos]) != kCentralDirSig)
            throw ZipError("corrupt central directory in " + path.string());
        const std::uint16_t method = rd16(&bytes[pos + 10]);
        const std::uint32_t comp_size = rd32(&bytes[pos + 20]);
        const std::uint32_t uncomp_size = rd32(&bytes[pos + 24]);
        const std::uint16_t name_len = rd16(&bytes[pos + 28]);
        const std::uint16_t extra_len = rd16(&bytes[pos + 30]);
        const std::uint16_t comment_len = rd16(&bytes[pos + 32]);
        const std::uint32_t local_offset = rd32(&bytes[pos + 42]);
        if (pos + 46 + name_len > bytes.size())
            throw ZipError("corrupt central directory in " + path.string());
        std::string name(reinterpret_cast<const char*>(&bytes[pos + 46]), name_len);
        pos += 46u + name_len + extra_len + comment_len;

        if (!name.empty() && name.back() == '/') continue;  // directory entry

        if (local_offset + 30 > bytes.size() || rd32(&bytes[local_offset]) != kLocalHeaderSig)
            throw ZipError("corrupt local header for zip entry " + name);
        const std::uint16_t local_name_len = rd16(&bytes[local_offset + 26]);
        const std::uint16_t local_extra_len = rd16(&bytes[local_offset + 28]);
        const std::size_t data_start = local_offset + 30u + local_name_len + local_extra_len;
        if (data_start + comp_size > bytes.size())
            throw ZipError("truncated data for zip entry " + name);

        if (method == 0) {
            if (comp_size != uncomp_size)
                throw ZipError("inconsistent stored entry " + name);
            files[name] = std::string(reinterpret_cast<const char*>(&bytes[data_start]), comp_size);
        } else if (method == 8) {
            files[name] = inflate_raw(&bytes[data_start], comp_size, uncomp_size);
        } else {
            throw ZipError("unsupported compression method " + std::to_string(method) +
                           " for zip entry " + name);
        }
    }
    return files;
}

}  // namespace psmine::zip
