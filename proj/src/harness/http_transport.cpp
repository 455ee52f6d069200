#include "iocbench/harness/client.hpp"

#include "httplib.h"

namespace iocbench::harness {

namespace {

struct Target {
    std::string origin;
    std::string path;
};

Target split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw TransportFailure("malformed URL " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

class HttplibTransport : public Transport {
public:
    HttpReply post(const HttpRequest& request, std::chrono::milliseconds timeout) override {
        const Target t = split_url(request.url);
        httplib::Client client(t.origin);
        const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
        const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
        client.set_connection_timeout(secs.count(), usecs.count());
        client.set_read_timeout(secs.count(), usecs.count());
        client.set_write_timeout(secs.count(), usecs.count());
        httplib::Headers headers;
        for (const auto& [k, v] : request.headers) headers.emplace(k, v);
        auto res = client.Post(t.path, headers, request.body, "application/json");
        if (!res) throw TransportFailure("transport failure: " + httplib::to_string(res.error()));
        return {res->status, res->body};
    }
};

}  // namespace

std::shared_ptr<Transport> make_http_transport() { return std::make_shared<HttplibTransport>(); }

}  // namespace iocbench::harness
