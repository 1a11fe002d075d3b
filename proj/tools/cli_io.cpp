#include "cli_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cli {

uint64_t fnv1a(const std::string& s)
{
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string quote(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string r = "\"";
    for (char c : s) {
        if (c == '"')
            r += '"';
        r += c;
    }
    return r + "\"";
}

Output::Output(const std::string& path)
{
    if (path.empty() || path == "-")
        return;
    std::filesystem::path p(path);
    const char* dir = std::getenv("VPATCH_OUTDIR");
    if (p.is_relative() && dir && *dir)
        p = std::filesystem::path(dir) / p;
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    path_ = p.string();
    f_ = std::fopen(path_.c_str(), "w");
    if (!f_)
        throw usage_error("cannot open " + path_ + ": " + std::strerror(errno));
}

Output::~Output()
{
    if (f_)
        std::fclose(f_);
}

void Output::line(const std::string& s)
{
    FILE* f = f_ ? f_ : stdout;
    std::fputs(s.c_str(), f);
    std::fputc('\n', f);
}

CsvWriter::CsvWriter(Output& out, const std::string& command, const std::string& hash,
                     const std::vector<std::string>& cols)
    : out_(out), ncols_(cols.size())
{
    out_.line("# vpatch " + command + " config_hash=" + hash);
    std::string h;
    for (size_t i = 0; i < cols.size(); ++i)
        h += (i ? "," : "") + quote(cols[i]);
    out_.line(h);
}

void CsvWriter::row(const std::vector<double>& v)
{
    std::vector<std::string> s;
    for (double x : v)
        s.push_back(num(x));
    row(s);
}

void CsvWriter::row(const std::vector<std::string>& v)
{
    if (v.size() != ncols_)
        throw std::logic_error("csv row width mismatch");
    std::string r;
    for (size_t i = 0; i < v.size(); ++i)
        r += (i ? "," : "") + quote(v[i]);
    out_.line(r);
}

Report::Report(Output& out, const std::string& command, const std::string& hash) : out_(out)
{
    out_.line("command = " + command);
    out_.line("config_hash = " + hash);
}

void Report::put(const std::string& key, double v) { out_.line(key + " = " + num(v)); }
void Report::put(const std::string& key, long v) { out_.line(key + " = " + std::to_string(v)); }
void Report::put(const std::string& key, const std::string& v) { out_.line(key + " = " + v); }

std::map<std::string, std::string> read_key_values(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw usage_error("cannot read " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty() || line.front() == '[')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw usage_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

namespace {

double to_double(const std::string& key, const std::string& v)
{
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (v.empty() || *end)
        throw usage_error("domain file: bad number for " + key + ": " + v);
    return x;
}

std::vector<double> to_list(const std::string& key, const std::string& v)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(to_double(key, item));
    return out;
}

vp_domain* make_kind(const std::string& kind, const std::map<std::string, std::string>& kv, const DomainArgs& args)
{
    auto get = [&](const std::string& k, double dflt) { return kv.count(k) ? to_double(k, kv.at(k)) : dflt; };
    vp_domain* d = nullptr;
    if (kind == "disc")
        check(vp_domain_disc(&d), "domain");
    else if (kind == "ellipse")
        check(vp_domain_ellipse(get("a", args.a), &d), "domain");
    else if (kind == "rectangle") {
        double aspect = args.aspect;
        if (kv.count("l") && kv.count("L"))
            aspect = to_double("l", kv.at("l")) / to_double("L", kv.at("L"));
        check(vp_domain_rectangle(get("aspect", aspect), &d), "domain");
    } else if (kind == "polygon" || kind == "regular_polygon")
        check(vp_domain_regular_polygon(int(get("m", args.m)), &d), "domain");
    else if (kind == "sector")
        check(vp_domain_sector(int(get("m", args.m)), &d), "domain");
    else if (kind == "sym_polygon") {
        if (!kv.count("theta") || !kv.count("mu"))
            throw usage_error("domain file: sym_polygon needs theta and mu");
        auto theta = to_list("theta", kv.at("theta"));
        auto mu = to_list("mu", kv.at("mu"));
        if (theta.size() != mu.size())
            throw usage_error("domain file: theta and mu differ in length");
        std::vector<double> alpha{1, 0}, beta{0, 0};
        if (kv.count("alpha"))
            alpha = to_list("alpha", kv.at("alpha"));
        if (kv.count("beta"))
            beta = to_list("beta", kv.at("beta"));
        if (alpha.size() != 2 || beta.size() != 2)
            throw usage_error("domain file: alpha and beta are re,im pairs");
        check(vp_domain_sym_polygon(int(theta.size()), theta.data(), mu.data(), alpha[0], alpha[1], beta[0], beta[1],
                                    &d),
              "domain");
    } else
        throw usage_error("unknown domain kind: " + kind);
    return d;
}

}  // namespace

Domain::Domain(const DomainArgs& args)
{
    static const char* kinds[] = {"disc", "ellipse", "rectangle", "polygon", "regular_polygon", "sector"};
    for (const char* k : kinds)
        if (args.domain == k) {
            d_ = make_kind(args.domain, {}, args);
            return;
        }
    auto kv = read_key_values(args.domain);
    if (!kv.count("kind"))
        throw usage_error("domain file " + args.domain + " has no kind");
    d_ = make_kind(kv.at("kind"), kv, args);
    if (kv.count("xi0")) {
        auto c = to_list("xi0", kv.at("xi0"));
        if (c.size() != 2)
            throw usage_error("domain file: xi0 is an x,y pair");
        vp_domain* n = nullptr;
        int st = vp_domain_normalized(d_, c[0], c[1], &n);
        vp_domain_destroy(d_);
        d_ = nullptr;
        check(st, "domain");
        d_ = n;
    }
}

std::string Domain::describe() const
{
    char buf[1024];
    check(vp_domain_describe(d_, buf, sizeof buf), "describe");
    return buf;
}

}  // namespace cli
