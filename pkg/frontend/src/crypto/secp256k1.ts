// secp256k1 ECDSA with recoverable signatures: deterministic nonces per
// RFC 6979 (HMAC-SHA256 via WebCrypto), low-s normalization, and public
// key recovery. Affine arithmetic over bigint; not constant-time, which
// is acceptable for a test wallet holding no real value.

export const P = 0xfffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2fn;
export const N = 0xfffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141n;
const GX = 0x79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798n;
const GY = 0x483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8n;

const HALF_N = N >> 1n;

export interface Point {
  x: bigint;
  y: bigint;
}

export const INFINITY: Point = { x: -1n, y: -1n };

function mod(value: bigint, m: bigint): bigint {
  const r = value % m;
  return r < 0n ? r + m : r;
}

function modInv(a: bigint, m: bigint): bigint {
  // extended Euclid; a must be invertible
  let [old_r, r] = [mod(a, m), m];
  let [old_s, s] = [1n, 0n];
  while (r !== 0n) {
    const q = old_r / r;
    [old_r, r] = [r, old_r - q * r];
    [old_s, s] = [s, old_s - q * s];
  }
  if (old_r !== 1n) throw new Error("value not invertible");
  return mod(old_s, m);
}

function modPow(base: bigint, exponent: bigint, m: bigint): bigint {
  let result = 1n;
  let b = mod(base, m);
  let e = exponent;
  while (e > 0n) {
    if (e & 1n) result = (result * b) % m;
    b = (b * b) % m;
    e >>= 1n;
  }
  return result;
}

function isInfinity(p: Point): boolean {
  return p.x === -1n && p.y === -1n;
}

export function pointAdd(a: Point, b: Point): Point {
  if (isInfinity(a)) return b;
  if (isInfinity(b)) return a;
  if (a.x === b.x && mod(a.y + b.y, P) === 0n) return INFINITY;
  let lambda: bigint;
  if (a.x === b.x && a.y === b.y) {
    lambda = mod(3n * a.x * a.x * modInv(2n * a.y, P), P);
  } else {
    lambda = mod((b.y - a.y) * modInv(b.x - a.x, P), P);
  }
  const x = mod(lambda * lambda - a.x - b.x, P);
  const y = mod(lambda * (a.x - x) - a.y, P);
  return { x, y };
}

export function scalarMul(k: bigint, point: Point): Point {
  let scalar = mod(k, N);
  let result = INFINITY;
  let addend = point;
  while (scalar > 0n) {
    if (scalar & 1n) result = pointAdd(result, addend);
    addend = pointAdd(addend, addend);
    scalar >>= 1n;
  }
  return result;
}

// Precomputed doublings of the base point; signing and verification
// multiply by G far more often than by arbitrary points.
const G_DOUBLINGS: Point[] = [];

function gTable(): Point[] {
  if (G_DOUBLINGS.length === 0) {
    let point: Point = { x: GX, y: GY };
    for (let i = 0; i < 256; i++) {
      G_DOUBLINGS.push(point);
      point = pointAdd(point, point);
    }
  }
  return G_DOUBLINGS;
}

export function scalarMulG(k: bigint): Point {
  let scalar = mod(k, N);
  const table = gTable();
  let result = INFINITY;
  let index = 0;
  while (scalar > 0n) {
    if (scalar & 1n) result = pointAdd(result, table[index]);
    scalar >>= 1n;
    index++;
  }
  return result;
}

export function isOnCurve(point: Point): boolean {
  if (isInfinity(point)) return false;
  return mod(point.y * point.y - point.x ** 3n - 7n, P) === 0n;
}

export function publicKey(privateKey: bigint): Point {
  if (privateKey <= 0n || privateKey >= N) {
    throw new Error("private key out of range");
  }
  return scalarMulG(privateKey);
}

// --- RFC 6979 deterministic nonce -----------------------------------------

export function bytesToBigint(data: Uint8Array): bigint {
  let value = 0n;
  for (const byte of data) value = (value << 8n) | BigInt(byte);
  return value;
}

export function bigintToBytes(value: bigint, length: number): Uint8Array {
  const out = new Uint8Array(length);
  let v = value;
  for (let i = length - 1; i >= 0; i--) {
    out[i] = Number(v & 0xffn);
    v >>= 8n;
  }
  return out;
}

async function hmacSha256(key: Uint8Array, message: Uint8Array): Promise<Uint8Array> {
  const cryptoKey = await crypto.subtle.importKey(
    "raw", key as BufferSource, { name: "HMAC", hash: "SHA-256" }, false, ["sign"]);
  const mac = await crypto.subtle.sign("HMAC", cryptoKey, message as BufferSource);
  return new Uint8Array(mac);
}

function concat(...parts: Uint8Array[]): Uint8Array {
  const total = parts.reduce((sum, p) => sum + p.length, 0);
  const out = new Uint8Array(total);
  let offset = 0;
  for (const part of parts) {
    out.set(part, offset);
    offset += part.length;
  }
  return out;
}

function bitsToInt(data: Uint8Array): bigint {
  let value = bytesToBigint(data);
  const extra = 8 * data.length - 256;
  if (extra > 0) value >>= BigInt(extra);
  return value;
}

export async function rfc6979Nonce(privateKey: bigint, digest: Uint8Array): Promise<bigint> {
  let v: Uint8Array = new Uint8Array(32).fill(0x01);
  let k: Uint8Array = new Uint8Array(32).fill(0x00);
  const seed = concat(bigintToBytes(privateKey, 32),
                      bigintToBytes(mod(bitsToInt(digest), N), 32));
  k = await hmacSha256(k, concat(v, Uint8Array.of(0x00), seed));
  v = await hmacSha256(k, v);
  k = await hmacSha256(k, concat(v, Uint8Array.of(0x01), seed));
  v = await hmacSha256(k, v);
  for (;;) {
    v = await hmacSha256(k, v);
    const candidate = bitsToInt(v);
    if (candidate > 0n && candidate < N) return candidate;
    k = await hmacSha256(k, concat(v, Uint8Array.of(0x00)));
    v = await hmacSha256(k, v);
  }
}

// --- Signing and recovery ---------------------------------------------------

export interface Signature {
  r: bigint;
  s: bigint;
  recoveryId: number;
}

export async function signDigest(privateKey: bigint, digest: Uint8Array): Promise<Signature> {
  if (digest.length !== 32) throw new Error("digest must be 32 bytes");
  const z = bytesToBigint(digest);
  let k = await rfc6979Nonce(privateKey, digest);
  for (;;) {
    const point = scalarMulG(k);
    const r = mod(point.x, N);
    if (r === 0n) {
      k = mod(k + 1n, N);
      continue;
    }
    let s = mod(modInv(k, N) * (z + r * privateKey), N);
    if (s === 0n) {
      k = mod(k + 1n, N);
      continue;
    }
    let recoveryId = (point.x >= N ? 2 : 0) | Number(point.y & 1n);
    if (s > HALF_N) {
      s = N - s;
      recoveryId ^= 1;
    }
    return { r, s, recoveryId };
  }
}

export function recoverPublicKey(digest: Uint8Array, sig: Signature): Point {
  const { r, s, recoveryId } = sig;
  if (r <= 0n || r >= N || s <= 0n || s >= N) {
    throw new Error("signature scalar out of range");
  }
  if (recoveryId < 0 || recoveryId > 3) {
    throw new Error("recovery id out of range");
  }
  const x = r + N * BigInt(recoveryId >> 1);
  if (x >= P) throw new Error("recovered x outside field");
  const ySquared = mod(modPow(x, 3n, P) + 7n, P);
  let y = modPow(ySquared, (P + 1n) / 4n, P);
  if (mod(y * y, P) !== ySquared) throw new Error("signature point not on curve");
  if ((y & 1n) !== BigInt(recoveryId & 1)) y = P - y;
  const pointR: Point = { x, y };
  const z = bytesToBigint(digest);
  const rInv = modInv(r, N);
  // Q = r^-1 (s*R - z*G)
  let candidate = pointAdd(scalarMul(s, pointR), scalarMulG(N - mod(z, N)));
  candidate = scalarMul(rInv, candidate);
  if (isInfinity(candidate) || !isOnCurve(candidate)) {
    throw new Error("recovered point invalid");
  }
  return candidate;
}

export function verifyDigest(pub: Point, digest: Uint8Array, r: bigint, s: bigint): boolean {
  if (r <= 0n || r >= N || s <= 0n || s >= N) return false;
  const z = bytesToBigint(digest);
  const sInv = modInv(s, N);
  const u1 = mod(z * sInv, N);
  const u2 = mod(r * sInv, N);
  const point = pointAdd(scalarMulG(u1), scalarMul(u2, pub));
  if (isInfinity(point)) return false;
  return mod(point.x, N) === r;
}
