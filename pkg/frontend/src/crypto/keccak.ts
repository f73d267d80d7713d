// Keccak-256 as used for wallet addresses and signed challenges.
// This is the original Keccak submission (multi-rate padding byte 0x01),
// not the FIPS-202 SHA3-256 variant, so WebCrypto cannot supply it.

const RC: bigint[] = [
  0x0000000000000001n, 0x0000000000008082n, 0x800000000000808an, 0x8000000080008000n,
  0x000000000000808bn, 0x0000000080000001n, 0x8000000080008081n, 0x8000000000008009n,
  0x000000000000008an, 0x0000000000000088n, 0x0000000080008009n, 0x000000008000000an,
  0x000000008000808bn, 0x800000000000008bn, 0x8000000000008089n, 0x8000000000008003n,
  0x8000000000008002n, 0x8000000000000080n, 0x000000000000800an, 0x800000008000000an,
  0x8000000080008081n, 0x8000000000008080n, 0x0000000080000001n, 0x8000000080008008n,
];

// Rotation offsets, indexed by lane position x + 5*y.
const ROT = [
  0n, 1n, 62n, 28n, 27n,
  36n, 44n, 6n, 55n, 20n,
  3n, 10n, 43n, 25n, 39n,
  41n, 45n, 15n, 21n, 8n,
  18n, 2n, 61n, 56n, 14n,
];

const MASK = (1n << 64n) - 1n;
const RATE = 136;       // 1088-bit rate for a 256-bit digest
const PAD_BYTE = 0x01;  // original Keccak domain padding

function rol(value: bigint, shift: bigint): bigint {
  if (shift === 0n) return value;
  return ((value << shift) | (value >> (64n - shift))) & MASK;
}

function keccakF(state: bigint[]): void {
  for (const rc of RC) {
    // theta
    const c: bigint[] = [];
    for (let x = 0; x < 5; x++) {
      c.push(state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20]);
    }
    const d: bigint[] = [];
    for (let x = 0; x < 5; x++) {
      d.push(c[(x + 4) % 5] ^ rol(c[(x + 1) % 5], 1n));
    }
    for (let x = 0; x < 5; x++) {
      for (let y = 0; y < 25; y += 5) {
        state[x + y] ^= d[x];
      }
    }
    // rho and pi
    const b: bigint[] = new Array(25).fill(0n);
    for (let x = 0; x < 5; x++) {
      for (let y = 0; y < 5; y++) {
        b[y + 5 * ((2 * x + 3 * y) % 5)] = rol(state[x + 5 * y], ROT[x + 5 * y]);
      }
    }
    // chi
    for (let x = 0; x < 5; x++) {
      for (let y = 0; y < 25; y += 5) {
        state[x + y] = b[x + y] ^ (~b[((x + 1) % 5) + y] & MASK & b[((x + 2) % 5) + y]);
      }
    }
    // iota
    state[0] ^= rc;
  }
}

function readLane(block: Uint8Array, offset: number): bigint {
  let lane = 0n;
  for (let i = 7; i >= 0; i--) {
    lane = (lane << 8n) | BigInt(block[offset + i]);
  }
  return lane;
}

export function keccak256(data: Uint8Array): Uint8Array {
  const state: bigint[] = new Array(25).fill(0n);

  const padLen = RATE - (data.length % RATE);
  const padded = new Uint8Array(data.length + padLen);
  padded.set(data);
  padded[data.length] ^= PAD_BYTE;
  padded[padded.length - 1] ^= 0x80;

  for (let offset = 0; offset < padded.length; offset += RATE) {
    for (let i = 0; i < RATE / 8; i++) {
      state[i] ^= readLane(padded, offset + 8 * i);
    }
    keccakF(state);
  }

  const out = new Uint8Array(32);
  for (let i = 0; i < 4; i++) {
    let lane = state[i];
    for (let j = 0; j < 8; j++) {
      out[8 * i + j] = Number(lane & 0xffn);
      lane >>= 8n;
    }
  }
  return out;
}

export function keccak256Text(text: string): Uint8Array {
  return keccak256(new TextEncoder().encode(text));
}
