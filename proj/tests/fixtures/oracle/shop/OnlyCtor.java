package shop;

final class OnlyCtor {
    OnlyCtor() {
    }
}
