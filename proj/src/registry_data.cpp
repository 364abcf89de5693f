// Compiled-in default tables. The registry is data: edits happen here (or in
// an override file passed at runtime), not in classification code.

namespace pqcscope::detail {

extern const char* const kDefaultRegistryText;
extern const char* const kDefaultVersionYearText;

const char* const kDefaultRegistryText =
    "# Default classification registry.\n"
    "# Entry rows:  identifier <TAB> protocol <TAB> role <TAB> class [<TAB> alias]\n"
    "# Status rows: descriptor-or-'-' <TAB> protocol <TAB> status <TAB> -\n"
    "# Classes: post-quantum-hybrid | classical | deprecated | insecure\n"
    "\n"
    "# ssh key exchange\n"
    "curve25519-sha256\tssh\tkex\tclassical\n"
    "curve25519-sha256@libssh.org\tssh\tkex\tclassical\n"
    "diffie-hellman-group-exchange-sha256\tssh\tkex\tclassical\n"
    "diffie-hellman-group14-sha1\tssh\tkex\tclassical\n"
    "diffie-hellman-group1-sha1\tssh\tkex\tdeprecated\n"
    "sntrup761x25519-sha512@openssh.com\tssh\tkex\tpost-quantum-hybrid\n"
    "\n"
    "# ssh symmetric ciphers\n"
    "3des-cbc\tssh\tcipher\tdeprecated\n"
    "aes128-cbc\tssh\tcipher\tclassical\n"
    "aes128-ctr\tssh\tcipher\tclassical\n"
    "aes128-gcm@openssh.com\tssh\tcipher\tclassical\n"
    "aes256-ctr\tssh\tcipher\tclassical\n"
    "aes256-gcm@openssh.com\tssh\tcipher\tclassical\n"
    "chacha20-poly1305@openssh.com\tssh\tcipher\tclassical\n"
    "\n"
    "# ssh message authentication\n"
    "hmac-sha1\tssh\tmac\tclassical\n"
    "hmac-sha2-256\tssh\tmac\tclassical\n"
    "hmac-sha2-256-etm@openssh.com\tssh\tmac\tclassical\n"
    "hmac-sha2-512\tssh\tmac\tclassical\n"
    "umac-128-etm@openssh.com\tssh\tmac\tclassical\n"
    "umac-64-etm@openssh.com\tssh\tmac\tclassical\n"
    "\n"
    "# ssh host keys\n"
    "ecdsa-sha2-nistp256\tssh\thostkey\tclassical\n"
    "rsa-sha2-512\tssh\thostkey\tclassical\n"
    "ssh-ed25519\tssh\thostkey\tclassical\n"
    "ssh-rsa\tssh\thostkey\tdeprecated\n"
    "\n"
    "# tls cipher suites (canonical dash form; alias is the IANA underscore form)\n"
    "TLS-AES-128-GCM-SHA256\ttls\tsuite\tclassical\tTLS_AES_128_GCM_SHA256\n"
    "TLS-AES-256-GCM-SHA384\ttls\tsuite\tclassical\tTLS_AES_256_GCM_SHA384\n"
    "TLS-DH-ANON-WITH-AES-256-GCM-SHA384\ttls\tsuite\tinsecure\tTLS_DH_anon_WITH_AES_256_GCM_SHA384\n"
    "TLS-ECDH-ANON-WITH-AES-256-CBC-SHA\ttls\tsuite\tinsecure\tTLS_ECDH_anon_WITH_AES_256_CBC_SHA\n"
    "TLS-ECDHE-ECDSA-WITH-AES-128-GCM-SHA256\ttls\tsuite\tclassical\tTLS_ECDHE_ECDSA_WITH_AES_128_GCM_SHA256\n"
    "TLS-ECDHE-ECDSA-WITH-AES-256-GCM-SHA384\ttls\tsuite\tclassical\tTLS_ECDHE_ECDSA_WITH_AES_256_GCM_SHA384\n"
    "TLS-ECDHE-RSA-WITH-AES-128-GCM-SHA256\ttls\tsuite\tclassical\tTLS_ECDHE_RSA_WITH_AES_128_GCM_SHA256\n"
    "TLS-ECDHE-RSA-WITH-AES-256-GCM-SHA384\ttls\tsuite\tclassical\tTLS_ECDHE_RSA_WITH_AES_256_GCM_SHA384\n"
    "TLS-ECDHE-RSA-WITH-CHACHA20-POLY1305-SHA256\ttls\tsuite\tclassical\tTLS_ECDHE_RSA_WITH_CHACHA20_POLY1305_SHA256\n"
    "TLS-ECDHE-RSA-WITH-NULL-SHA\ttls\tsuite\tinsecure\tTLS_ECDHE_RSA_WITH_NULL_SHA\n"
    "\n"
    "# tls named groups seen in the curve column\n"
    "X25519Kyber768Draft00\ttls\tkex\tpost-quantum-hybrid\n"
    "secp256r1\ttls\tkex\tclassical\n"
    "secp384r1\ttls\tkex\tclassical\n"
    "x25519\ttls\tkex\tclassical\n"
    "x448\ttls\tkex\tclassical\n"
    "\n"
    "# rdp security protocols (canonical dash form; alias is the log spelling)\n"
    "HYBRID\trdp\tsecurity_protocol\tclassical\n"
    "HYBRID-EX\trdp\tsecurity_protocol\tclassical\tHYBRID_EX\n"
    "RDP\trdp\tsecurity_protocol\tdeprecated\n"
    "RDSTLS\trdp\tsecurity_protocol\tclassical\n"
    "SSL\trdp\tsecurity_protocol\tclassical\n"
    "\n"
    "# protocol post-quantum availability survey ('-' = nothing production-ready)\n"
    "sntrup761x25519-sha512@openssh.com\tssh\tstatus\t-\n"
    "KEM (BIKE, CRYSTALS-Kyber), Signature (CRYSTALS-Dilithium)\ttls\tstatus\t-\n"
    "-\tbhr\tstatus\t-\n"
    "-\tdhcp\tstatus\t-\n"
    "-\tdns\tstatus\t-\n"
    "-\tftp\tstatus\t-\n"
    "-\thttp\tstatus\t-\n"
    "-\tkerberos\tstatus\t-\n"
    "-\tmodbus\tstatus\t-\n"
    "-\tmysql\tstatus\t-\n"
    "-\tntlm\tstatus\t-\n"
    "-\tradius\tstatus\t-\n"
    "-\trdp\tstatus\t-\n"
    "-\tsip\tstatus\t-\n"
    "-\tsmb\tstatus\t-\n"
    "-\tsmtp\tstatus\t-\n";

// OpenSSH release years, compiled from the project's public release notes.
const char* const kDefaultVersionYearText =
    "# software <TAB> version <TAB> release year\n"
    "OpenSSH\t5.0\t2008\n"
    "OpenSSH\t5.1\t2008\n"
    "OpenSSH\t5.2\t2009\n"
    "OpenSSH\t5.3\t2009\n"
    "OpenSSH\t5.4\t2010\n"
    "OpenSSH\t5.5\t2010\n"
    "OpenSSH\t5.6\t2010\n"
    "OpenSSH\t5.7\t2011\n"
    "OpenSSH\t5.8\t2011\n"
    "OpenSSH\t5.9\t2011\n"
    "OpenSSH\t6.0\t2012\n"
    "OpenSSH\t6.1\t2012\n"
    "OpenSSH\t6.2\t2013\n"
    "OpenSSH\t6.3\t2013\n"
    "OpenSSH\t6.4\t2013\n"
    "OpenSSH\t6.5\t2014\n"
    "OpenSSH\t6.6\t2014\n"
    "OpenSSH\t6.7\t2014\n"
    "OpenSSH\t6.8\t2015\n"
    "OpenSSH\t6.9\t2015\n"
    "OpenSSH\t7.0\t2015\n"
    "OpenSSH\t7.1\t2015\n"
    "OpenSSH\t7.2\t2016\n"
    "OpenSSH\t7.3\t2016\n"
    "OpenSSH\t7.4\t2016\n"
    "OpenSSH\t7.5\t2017\n"
    "OpenSSH\t7.6\t2017\n"
    "OpenSSH\t7.7\t2018\n"
    "OpenSSH\t7.8\t2018\n"
    "OpenSSH\t7.9\t2018\n"
    "OpenSSH\t8.0\t2019\n"
    "OpenSSH\t8.1\t2019\n"
    "OpenSSH\t8.2\t2020\n"
    "OpenSSH\t8.3\t2020\n"
    "OpenSSH\t8.4\t2020\n"
    "OpenSSH\t8.5\t2021\n"
    "OpenSSH\t8.6\t2021\n"
    "OpenSSH\t8.7\t2021\n"
    "OpenSSH\t8.8\t2021\n"
    "OpenSSH\t8.9\t2022\n"
    "OpenSSH\t9.0\t2022\n"
    "OpenSSH\t9.1\t2022\n"
    "OpenSSH\t9.2\t2023\n"
    "OpenSSH\t9.3\t2023\n"
    "OpenSSH\t9.4\t2023\n"
    "OpenSSH\t9.5\t2023\n"
    "OpenSSH\t9.6\t2023\n"
    "OpenSSH\t9.7\t2024\n";

}  // namespace pqcscope::detail
