using System;

namespace ShopDemo.Business.Pricing
{
    public static class PriceMath
    {
        public static decimal AddTax(decimal amount)
        {
            return amount + amount * 0.07m;
        }

        public static decimal RoundMoney(decimal amount)
        {
            return amount;
        }
    }
}
