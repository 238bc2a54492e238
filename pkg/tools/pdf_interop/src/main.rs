// Thin CLI over lopdf used by the interoperability test suite.
//
//   pdf-interop encrypt <in.pdf> <out.pdf> <user-pw> <owner-pw>
//       AES-128 (V=4/R=4, AESV2 crypt filter) encryption of a plaintext PDF.
//
//   pdf-interop decrypt <in.pdf> <out.pdf> <password>
//       Authenticate and strip encryption, saving a plaintext PDF.

use std::collections::BTreeMap;
use std::process::exit;
use std::sync::Arc;

use lopdf::encryption::crypt_filters::{Aes128CryptFilter, CryptFilter};
use lopdf::{Document, EncryptionState, EncryptionVersion, Permissions};

fn usage() -> ! {
    eprintln!("usage: pdf-interop encrypt <in.pdf> <out.pdf> <user-pw> <owner-pw>");
    eprintln!("       pdf-interop decrypt <in.pdf> <out.pdf> <password>");
    exit(2);
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() < 2 {
        usage();
    }
    match args[1].as_str() {
        "encrypt" => {
            if args.len() != 6 {
                usage();
            }
            let mut doc = Document::load(&args[2]).expect("failed to load input PDF");
            let mut crypt_filters: BTreeMap<Vec<u8>, Arc<dyn CryptFilter>> = BTreeMap::new();
            crypt_filters.insert(b"StdCF".to_vec(), Arc::new(Aes128CryptFilter));
            let version = EncryptionVersion::V4 {
                document: &doc,
                encrypt_metadata: true,
                crypt_filters,
                stream_filter: b"StdCF".to_vec(),
                string_filter: b"StdCF".to_vec(),
                owner_password: &args[5],
                user_password: &args[4],
                permissions: Permissions::default(),
            };
            let state = EncryptionState::try_from(version).expect("failed to build encryption state");
            doc.encrypt(&state).expect("encryption failed");
            doc.save(&args[3]).expect("failed to save output PDF");
        }
        "decrypt" => {
            if args.len() != 5 {
                usage();
            }
            let mut doc = Document::load(&args[2]).expect("failed to load input PDF");
            doc.decrypt(&args[4]).expect("decryption failed");
            doc.trailer.remove(b"Encrypt");
            doc.save(&args[3]).expect("failed to save output PDF");
        }
        _ => usage(),
    }
}
