/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_demo_free: (a: number, b: number) => void;
export const __wbg_segmentation_free: (a: number, b: number) => void;
export const demo_height: (a: number) => number;
export const demo_imageRgba: (a: number) => [number, number];
export const demo_mapRgba: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const demo_new: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number];
export const demo_segment: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
export const demo_truthRgba: (a: number) => [number, number, number, number];
export const demo_width: (a: number) => number;
export const segmentation_centers: (a: number) => [number, number];
export const segmentation_converged: (a: number) => number;
export const segmentation_dice: (a: number) => number;
export const segmentation_fluidPixels: (a: number) => number;
export const segmentation_iterations: (a: number) => number;
export const segmentation_overlayRgba: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
